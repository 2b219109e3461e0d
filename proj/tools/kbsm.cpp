// kbsm: command-line front end.
//
// exit codes: 0 ok, 1 bad input (usage, parse or validation), 2 the
// computation itself failed (e.g. a reduction rule could not be derived).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "kbsm/kbsm.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace kbsm;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Band word for anything that describes a link in the solid torus.
AnnularWord as_band(const Diagram& d) {
  if (const auto* disk = std::get_if<DiskWord>(&d)) return disk_to_band(*disk);
  const auto& w = std::get<AnnularWord>(d);
  if (w.closure() == Closure::Planar) throw InputError("expected an annular or disk diagram, got a planar one");
  return w;
}

json terms_json(const SolidTorusElement& e) {
  json terms = json::array();
  for (auto it = e.terms().rbegin(); it != e.terms().rend(); ++it)
    terms.push_back({{"basis_index", it->first}, {"coefficient", it->second.to_string()}});
  return terms;
}

std::string rules_text(const LensContext& ctx, int n) {
  std::string out = ctx.name() + "\n";
  for (int m = ctx.top() + 1; m <= n; ++m) out += "x" + std::to_string(m) + " = " + derive_rule(ctx, m).to_string() + "\n";
  return out;
}

struct Options {
  std::string input;
  std::string output;
  std::string format = "plain";
  std::string to;
  int p = 0, q = 0, n = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kauffman bracket skein modules of links in lens spaces"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "plain or json")->check(CLI::IsMember({"plain", "json"}));

  auto lens_opts = [&](CLI::App* c) {
    c->add_option("-p", o.p, "lens space p")->required();
    c->add_option("-q", o.q, "lens space q")->required();
  };
  auto* solid = app.add_subcommand("solid", "value in the skein module of the solid torus");
  solid->add_option("file", o.input)->required();
  auto* lens = app.add_subcommand("lens", "value in the skein module of L(p,q)");
  lens_opts(lens);
  lens->add_option("file", o.input)->required();
  auto* bracket = app.add_subcommand("bracket", "Kauffman bracket of the diagram read in the 3-sphere");
  bracket->add_option("file", o.input)->required();
  auto* lift = app.add_subcommand("lift", "lift to the 3-sphere and its bracket");
  lens_opts(lift);
  lift->add_option("file", o.input)->required();
  lift->add_option("-o", o.output, "write the lift diagram here");
  auto* ver = app.add_subcommand("verify", "check the bracket congruence for the lift");
  lens_opts(ver);
  ver->add_option("file", o.input)->required();
  auto* table = app.add_subcommand("table", "reduction rules for x_m, p/2 < m <= n");
  lens_opts(table);
  table->add_option("-n", o.n, "largest index")->required();
  auto* convert = app.add_subcommand("convert", "band <-> disk diagrams");
  convert->add_option("--to", o.to)->required()->check(CLI::IsMember({"disk", "band"}));
  convert->add_option("file", o.input)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }
  const bool as_json = o.format == "json";

  try {
    if (*solid) {
      const auto v = resolve(as_band(parse_diagram(read_file(o.input))));
      if (as_json)
        std::cout << json{{"terms", terms_json(v)}}.dump(2) << "\n";
      else
        std::cout << v.to_string() << "\n";
    } else if (*lens) {
      const LensContext ctx(o.p, o.q);
      const auto v = kbsm_lens(as_band(parse_diagram(read_file(o.input))), ctx);
      if (as_json)
        std::cout << json{{"space", ctx.name()}, {"terms", terms_json(v.value())}}.dump(2) << "\n";
      else
        std::cout << v.to_string() << "\n";
    } else if (*bracket) {
      const auto d = parse_diagram(read_file(o.input));
      const AnnularWord w = std::holds_alternative<DiskWord>(d) ? as_band(d) : std::get<AnnularWord>(d);
      const auto b = bracket_s3(w);
      if (as_json)
        std::cout << json{{"bracket", b.to_string()}}.dump(2) << "\n";
      else
        std::cout << b.to_string() << "\n";
    } else if (*lift) {
      const LensContext ctx(o.p, o.q);
      const auto l = build_lift(as_band(parse_diagram(read_file(o.input))), ctx);
      if (!o.output.empty()) {
        std::ofstream out(o.output);
        if (!out) throw InputError("cannot write " + o.output);
        out << "# lift of " << o.input << " from " << ctx.name() << "\n" << serialize(l.word);
      }
      const auto raw = bracket_s3(l.word);
      const int w = writhe(l.word);
      const auto normalized = writhe_normalized(raw, w);
      if (as_json) {
        std::cout << json{{"bracket", raw.to_string()}, {"writhe", w}, {"normalized", normalized.to_string()}}.dump(2)
                  << "\n";
      } else {
        std::cout << "bracket: " << raw.to_string() << "\nwrithe: " << w << "\nnormalized: " << normalized.to_string()
                  << "\n";
      }
    } else if (*ver) {
      const LensContext ctx(o.p, o.q);
      const auto r = verify(as_band(parse_diagram(read_file(o.input))), ctx);
      if (as_json) {
        json g = json::array();
        for (const auto& f : r.groebner_basis) g.push_back(f.to_string());
        std::cout << json{{"lhs", r.lhs.to_string()},
                          {"rhs", r.rhs.to_string()},
                          {"difference", r.difference.to_string()},
                          {"groebner", g},
                          {"congruent", r.holds}}
                         .dump(2)
                  << "\n";
      } else {
        std::cout << r.to_string();
      }
    } else if (*table) {
      const LensContext ctx(o.p, o.q);
      if (as_json) {
        json rules = json::array();
        for (int m = ctx.top() + 1; m <= o.n; ++m)
          rules.push_back({{"index", m}, {"terms", terms_json(derive_rule(ctx, m))}});
        std::cout << json{{"space", ctx.name()}, {"rules", rules}}.dump(2) << "\n";
      } else {
        std::cout << rules_text(ctx, o.n);
      }
    } else if (*convert) {
      const auto d = parse_diagram(read_file(o.input));
      if (o.to == "disk") {
        const auto* w = std::get_if<AnnularWord>(&d);
        if (!w || w->closure() != Closure::Annular) throw InputError("convert --to disk expects an annular word");
        std::cout << serialize(band_to_disk(*w));
      } else {
        const auto* w = std::get_if<DiskWord>(&d);
        if (!w) throw InputError("convert --to band expects a disk word");
        std::cout << serialize(disk_to_band(*w));
      }
    }
  } catch (const ComputationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
