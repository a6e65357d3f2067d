#pragma once

#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "plinf/plinf.hpp"

namespace plinf::cli {

enum ExitCode { ok = 0, other = 1, parse_error = 2, hypothesis = 3, numeric = 4 };

inline std::vector<IVec> parse_vector_list(const std::string& s) {
  static const std::regex item(R"(\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  std::vector<IVec> out;
  for (std::sregex_iterator it(s.begin(), s.end(), item), end; it != end; ++it)
    out.push_back({std::stoll((*it)[1]), std::stoll((*it)[2])});
  std::string stripped = std::regex_replace(s, item, "");
  if (out.empty() || stripped.find_first_not_of(" ,") != std::string::npos)
    throw ParseError("expected a list like \"(-2,-1),(-1,-1)\", got \"" + s + "\"", 0);
  return out;
}

inline WeightVector parse_weight(const std::string& s) {
  static const std::regex re(R"(\s*\(?\s*(\d+)\s*,\s*(\d+)\s*\)?\s*)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ParseError("expected --weight a,b, got \"" + s + "\"", 0);
  return WeightVector(std::stoll(m[1]), std::stoll(m[2]));
}

inline Direction parse_direction(const std::string& s) {
  if (s == "x+") return Direction::Xpos;
  if (s == "x-") return Direction::Xneg;
  if (s == "y+") return Direction::Ypos;
  if (s == "y-") return Direction::Yneg;
  throw ParseError("unknown chart \"" + s + "\" (use x+, x-, y+, y- or a fan index)", 0);
}

inline std::vector<Seed> parse_seeds(const std::string& s) {
  std::vector<Seed> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ';')) {
    if (tok.find_first_not_of(' ') == std::string::npos) continue;
    auto colon = tok.find(':');
    if (colon == std::string::npos) throw ParseError("seed \"" + tok + "\" is not theta:r", 0);
    try {
      out.push_back({std::stod(tok.substr(0, colon)), std::stod(tok.substr(colon + 1))});
    } catch (const std::exception&) {
      throw ParseError("seed \"" + tok + "\" is not theta:r", 0);
    }
  }
  return out;
}

struct Options {
  std::string input = "-";
  std::string weight;
  std::string skeleton;
  std::string chart;
  std::string svg;
  std::string seeds;
  bool make_favorable = false;
  bool directional = false;
  bool json = false;
};

class Runner {
 public:
  Runner(std::istream& in, std::ostream& out) : in_(in), out_(out) {}

  PlanarField field(const Options& o) {
    std::string src;
    if (o.input == "-") {
      src.assign(std::istreambuf_iterator<char>(in_), {});
    } else {
      std::ifstream f(o.input);
      if (!f) throw DomainError("cannot open " + o.input);
      src.assign(std::istreambuf_iterator<char>(f), {});
    }
    PlanarField X = parse_field(src);
    if (X.empty()) throw DomainError("empty support");
    if (o.make_favorable) X = make_favorable(X).field;
    return X;
  }

  static SimpleFan fan(const Options& o, const Polytope& p) {
    if (!o.skeleton.empty()) return complete_fan(parse_vector_list(o.skeleton), {});
    return fan_for_polytope(p);
  }

  static WeightVector weight(const Options& o, const Polytope& p) {
    if (!o.weight.empty()) return parse_weight(o.weight);
    return plc_weight(p).weight;
  }

  void polytope(const Options& o) { out_ << io::to_json(build_polytope(field(o))).dump(2) << "\n"; }

  void fan_cmd(const Options& o) {
    out_ << io::to_json(fan(o, build_polytope(field(o)))).dump(2) << "\n";
  }

  void compactify(const Options& o) {
    PlanarField X = field(o);
    Polytope p = build_polytope(X);
    ChartField cf;
    if (!o.chart.empty() && std::isdigit(static_cast<unsigned char>(o.chart[0]))) {
      SimpleFan fn = fan(o, p);
      std::size_t j = std::stoul(o.chart);
      if (j < 1 || j > fn.s()) throw DomainError("fan chart index must lie in 1.." + std::to_string(fn.s()));
      cf = fan_chart_field(X, fn, j);
    } else {
      cf = directional_plc(X, weight(o, p), parse_direction(o.chart.empty() ? "x+" : o.chart));
    }
    out_ << cf.label() << ": " << pretty(cf) << "\n" << io::to_json(cf).dump(2) << "\n";
  }

  void singularities(const Options& o) {
    PlanarField X = field(o);
    Polytope p = build_polytope(X);
    std::vector<ChartField> charts;
    if (o.directional) {
      WeightVector w = weight(o, p);
      for (Direction d : {Direction::Xpos, Direction::Xneg, Direction::Ypos, Direction::Yneg})
        charts.push_back(directional_plc(X, w, d));
    } else {
      SimpleFan fn = fan(o, p);
      for (std::size_t j = 1; j <= fn.s(); ++j) charts.push_back(fan_chart_field(X, fn, j));
    }
    nlohmann::json all = nlohmann::json::array();
    char line[256];
    if (!o.json) {
      std::snprintf(line, sizeof line, "%-6s %-5s %-14s %-16s %-12s %-12s %s\n", "chart", "axis", "position",
                    "class", "eig_u", "eig_v", "char.orbit");
      out_ << line;
    }
    for (const auto& cf : charts)
      for (const auto& r : analyse_chart(cf)) {
        all.push_back(io::to_json(r));
        if (o.json) continue;
        std::string pos = r.curve ? "(all)" : (r.position->exact ? to_string(*r.position->exact)
                                                                 : std::to_string(r.coordinate()));
        auto ev = [&](const Eigenvalue& e) {
          return r.curve ? std::string("-") : (e.exact ? to_string(*e.exact) : std::to_string(e.approx));
        };
        std::snprintf(line, sizeof line, "%-6s %-5s %-14s %-16s %-12s %-12s %s\n", r.chart.c_str(),
                      to_string(r.axis), pos.c_str(), to_string(r.cls), ev(r.eig_u).c_str(), ev(r.eig_v).c_str(),
                      r.characteristic_orbit ? "yes" : "no");
        out_ << line;
      }
    if (o.json) out_ << io::with_schema({{"records", all}}, "singularities").dump(2) << "\n";
  }

  void principal_part(const Options& o) {
    auto upp = upper_principal_part(field(o));
    if (o.json)
      out_ << io::to_json(upp.field).dump(2) << "\n";
    else
      out_ << to_string(upp.field) << "\n";
  }

  void check_equivalence(const Options& o) {
    VerdictOptions vo;
    vo.make_favorable = o.make_favorable;
    Options raw = o;
    raw.make_favorable = false;  // the verdict applies the shear itself and reports lambda
    out_ << io::to_json(equivalence_verdict(field(raw), vo)).dump(2) << "\n";
  }

  void return_map(const Options& o) {
    PlanarField X = field(o);
    Polytope p = build_polytope(X);
    WeightVector w = !o.weight.empty() ? parse_weight(o.weight)
                                       : (is_favorable(p) ? plc_weight(p).weight : WeightVector{1, 1});
    out_ << io::to_json(return_map_test(X, w)).dump(2) << "\n";
  }

  void portrait(const Options& o) {
    PlanarField X = field(o);
    PortraitSpec spec;
    if (!o.weight.empty()) spec.weight = parse_weight(o.weight);
    if (!o.seeds.empty()) spec.seeds = o.seeds == "none" ? std::vector<Seed>{} : parse_seeds(o.seeds);
    Portrait pic = render_portrait(X, spec);
    if (o.svg.empty() || o.svg == "-") {
      out_ << pic.svg;
      return;
    }
    std::ofstream f(o.svg, std::ios::binary);
    if (!f) throw DomainError("cannot write " + o.svg);
    f << pic.svg;
    nlohmann::json markers = nlohmann::json::array();
    for (const auto& m : pic.markers)
      markers.push_back({{"chart", m.chart}, {"u", m.u}, {"theta", m.theta}, {"class", to_string(m.cls)}});
    std::size_t truncated = 0;
    for (const auto& t : pic.trajectories) truncated += t.truncated;
    out_ << io::with_schema({{"svg", o.svg},
                             {"weight", nlohmann::json::array({pic.weight.alpha, pic.weight.beta})},
                             {"period", pic.period},
                             {"markers", markers},
                             {"trajectories", pic.trajectories.size()},
                             {"truncated", truncated}},
                            "portrait")
                .dump(2)
         << "\n";
  }

 private:
  std::istream& in_;
  std::ostream& out_;
};

inline int exit_code_for(const Error& e) {
  std::string k = e.kind();
  if (k == "parse") return parse_error;
  if (k == "hypothesis") return hypothesis;
  if (k == "numeric") return numeric;
  return other;
}

inline void report(std::ostream& err, const std::string& kind, const std::string& msg) {
  err << io::error_json(kind, msg).dump() << "\n";
}

inline int run(std::vector<std::string> args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton-polytope analysis of planar polynomial vector fields near infinity", "plinf"};
  app.require_subcommand(1);
  Options o;
  Runner runner(in, out);

  auto common = [&](CLI::App* sub) {
    sub->add_option("input", o.input, "field file in the dx = ...; dy = ... grammar ('-' for stdin)");
    sub->add_option("--weight", o.weight, "weight vector a,b overriding the polytope's plc weight");
    sub->add_flag("--make-favorable", o.make_favorable, "shear x -> x + lambda y until the polytope is favorable");
    return sub;
  };
  auto with_skeleton = [&](CLI::App* sub) {
    sub->add_option("--skeleton", o.skeleton, "skeleton override, e.g. \"(-2,-1),(-1,-1),(-1,-2)\"");
    return sub;
  };

  std::function<void()> action;
  common(app.add_subcommand("polytope", "Newton polytope as JSON"))->callback([&] { action = [&] { runner.polytope(o); }; });
  with_skeleton(common(app.add_subcommand("fan", "simple fan as JSON")))->callback([&] {
    action = [&] { runner.fan_cmd(o); };
  });
  auto* comp = with_skeleton(common(app.add_subcommand("compactify", "compactified field in one chart")));
  comp->add_option("--chart", o.chart, "x+, x-, y+, y- or a fan chart index j >= 1");
  comp->callback([&] { action = [&] { runner.compactify(o); }; });
  auto* sing = with_skeleton(common(app.add_subcommand("singularities", "divisor singularities per chart")));
  sing->add_flag("--directional", o.directional, "use the four directional charts instead of the fan charts");
  sing->add_flag("--json", o.json, "emit JSON instead of a table");
  sing->callback([&] { action = [&] { runner.singularities(o); }; });
  auto* pp = common(app.add_subcommand("principal-part", "upper principal part of the field"));
  pp->add_flag("--json", o.json, "emit JSON");
  pp->callback([&] { action = [&] { runner.principal_part(o); }; });
  common(app.add_subcommand("check-equivalence", "hypotheses and verdict for X versus its upper principal part"))
      ->callback([&] { action = [&] { runner.check_equivalence(o); }; });
  common(app.add_subcommand("return-map", "linear-order return map around the circle at infinity"))->callback([&] {
    action = [&] { runner.return_map(o); };
  });
  auto* por = common(app.add_subcommand("portrait", "phase portrait on the Poincare-Lyapunov disk"));
  por->add_option("--svg", o.svg, "output file ('-' or omitted: stdout)");
  por->add_option("--seeds", o.seeds, "seeds \"theta:r;theta:r\" or \"none\" (default: 12 x 4 grid)");
  por->callback([&] { action = [&] { runner.portrait(o); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ok;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return ok;
  } catch (const CLI::ParseError& e) {
    report(err, "usage", e.what());
    return parse_error;
  }

  try {
    action();
    return ok;
  } catch (const Error& e) {
    report(err, e.kind(), e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    report(err, "error", e.what());
    return other;
  }
}

}  // namespace plinf::cli
