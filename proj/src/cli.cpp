#include "lienard/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "lienard/amplitude.hpp"
#include "lienard/asymptotics.hpp"
#include "lienard/cycles.hpp"
#include "lienard/errors.hpp"
#include "lienard/io.hpp"
#include "lienard/parallel.hpp"
#include "lienard/theorems.hpp"

#ifndef LIENARD_GOLDEN_DIR
#define LIENARD_GOLDEN_DIR "golden"
#endif

namespace lienard::cli {

namespace fs = std::filesystem;

namespace {

/// Bad command-line usage detected after parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool want_json(Format f) { return f == Format::json || f == Format::both; }
bool want_csv(Format f) { return f == Format::csv || f == Format::both; }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

LienardSystem load_system(const RunConfig& c) {
  const bool has_builtin = !c.builtin.empty();
  const bool has_file = !c.model_path.empty();
  if (has_builtin == has_file) throw UsageError("give exactly one of --builtin or --model");
  if (has_builtin) return builtin(c.builtin, c.params);
  return load_system_file(c.model_path);
}

Json model_block(const RunConfig& c, const LienardSystem& s) {
  Json j;
  j["name"] = s.name();
  if (!c.builtin.empty()) {
    j["builtin"] = c.builtin;
    Json p = Json::object();
    for (const auto& [k, v] : c.params) p[k] = v;
    j["params"] = p;
  } else {
    j["file"] = c.model_path.filename().string();
  }
  j["d"] = number(s.d());
  return j;
}

struct Bracket {
  Interval interval;
  int index = 0;
};

/// Interval (a_i, a_{i+1}) holding x; the index is 0 for single-zero models.
Bracket bracket_for(const LienardSystem& s, const ZeroStructure& zs, double x) {
  const std::vector<double>& a = zs.zeros;
  Bracket b;
  b.interval = {0.0, a.empty() ? s.d() : a.front()};
  b.index = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (x > a[i]) {
      b.interval = {a[i], i + 1 < a.size() ? a[i + 1] : s.d()};
      b.index = a.size() >= 2 ? static_cast<int>(i + 1) : 0;
    }
  }
  return b;
}

std::string csv_line(std::initializer_list<double> v) {
  std::string out;
  for (double x : v) {
    if (!out.empty()) out += ",";
    out += format_double(x);
  }
  return out + "\n";
}

int cmd_simulate(const RunConfig& c, std::ostream& out) {
  const LienardSystem s = load_system(c);
  const double y0 = c.y0.value_or(1.0);
  const EventSpec watch[] = {{EventKind::x_axis_cross, Direction::any, 1},
                             {EventKind::curve_F_cross, Direction::any, 1}};
  // One full turn: leave the positive y-axis, come back to it.
  const Trajectory tr = integrate(s, {0.0, 0.0, y0}, {EventKind::y_axis_cross, Direction::any, 2},
                                  c.ctrl, watch);
  if (want_csv(c.format)) {
    write_atomic(c.out_dir / "trajectory.csv", trajectory_csv(tr));
    write_atomic(c.out_dir / "events.csv", events_csv(tr));
  }
  const PotentialDelta pd = path_potential_delta(s, tr);
  if (want_json(c.format)) {
    Json j;
    j["model"] = model_block(c, s);
    j["start"] = {{"t", 0.0}, {"x", 0.0}, {"y", y0}};
    j["status"] = status_name(tr.status);
    j["end"] = {{"t", number(tr.end.t)}, {"x", number(tr.end.x)}, {"y", number(tr.end.y)}};
    j["steps"] = tr.steps;
    Json ev = Json::array();
    for (const Event& e : tr.events) {
      ev.push_back({{"kind", event_kind_name(e.kind)},
                    {"t", number(e.state.t)},
                    {"x", number(e.state.x)},
                    {"y", number(e.state.y)}});
    }
    j["events"] = ev;
    j["potential"] = {{"delta_v", number(pd.delta_v)},
                      {"integral_F_dy", number(pd.integral_F_dy)},
                      {"integral_gF_dt", number(pd.integral_gF_dt)}};
    write_atomic(c.out_dir / "trajectory.json", dump(j));
  }
  out << "simulate: status " << status_name(tr.status) << ", end (" << format_double(tr.end.x)
      << ", " << format_double(tr.end.y) << "), " << tr.events.size() << " events\n";
  return tr.status == Status::event_reached ? kOk : kNumericalError;
}

int cmd_cycles(const RunConfig& c, std::ostream& out) {
  const LienardSystem s = load_system(c);
  CycleScanOptions opt;
  opt.grid_n = c.grid;
  opt.ctrl = c.ctrl;
  if (c.y0) opt.y_max = *c.y0;
  const CycleScan scan = scan_limit_cycles(s, opt);

  double reach = 0.0;
  for (const LimitCycle& cy : scan.cycles) reach = std::max(reach, cy.amplitude);
  if (scan.cycles.empty()) reach = s.scan_horizon();
  const Interval range =
      c.alpha_range.value_or(Interval{0.02 * reach, std::min(1.25 * reach, s.d())});
  const PotentialScan ps = potential_scan(s, range, c.grid, c.ctrl);

  if (want_json(c.format)) {
    Json j;
    j["model"] = model_block(c, s);
    Json cy = Json::array();
    for (const LimitCycle& l : scan.cycles) cy.push_back(to_json(l));
    j["cycles"] = cy;
    j["scan"] = {{"y_max", number(scan.y_max)},
                 {"doublings", scan.doublings},
                 {"grid_n", c.grid},
                 {"alpha_range", {number(range.lo), number(range.hi)}}};
    Json roots = Json::array();
    for (double r : ps.sign_changes) roots.push_back(number(r));
    j["potential_roots"] = roots;
    Json flagged = Json::array();
    for (double a : ps.flagged) flagged.push_back(number(a));
    j["potential_flagged"] = flagged;
    write_atomic(c.out_dir / "cycles.json", dump(j));
  }
  if (want_csv(c.format)) {
    std::string d = "y0,D\n";
    for (std::size_t i = 0; i < scan.y0.size(); ++i) d += csv_line({scan.y0[i], scan.D[i]});
    write_atomic(c.out_dir / "half_return.csv", d);
    std::string v = "alpha,V\n";
    for (std::size_t i = 0; i < ps.alphas.size(); ++i) v += csv_line({ps.alphas[i], ps.V_values[i]});
    write_atomic(c.out_dir / "potential.csv", v);
  }
  out << "cycles: " << scan.cycles.size() << " found\n";
  for (const LimitCycle& l : scan.cycles) {
    out << "  y_plus0 " << format_double(l.y_plus0) << "  amplitude " << format_double(l.amplitude)
        << "  " << stability_name(l.stability) << "\n";
  }
  return kOk;
}

int cmd_alphabar(const RunConfig& c, std::ostream& out) {
  const LienardSystem s = load_system(c);
  const ZeroStructure zs = find_zero_structure(s);
  std::vector<AlphaBarResult> results;
  if (c.y0) {
    Bracket b;
    if (c.alpha_range) {
      b.interval = *c.alpha_range;
    } else {
      b.interval = {zs.zeros.empty() ? 0.0 : zs.zeros.front(),
                    zs.zeros.size() > 1 ? zs.zeros[1] : s.d()};
    }
    results.push_back(alpha_bar(s, *c.y0, b.interval, b.index));
  } else {
    for (const LimitCycle& cy : find_limit_cycles(s, 0.0, c.grid, c.ctrl)) {
      const Bracket b = bracket_for(s, zs, cy.amplitude);
      results.push_back(alpha_bar(s, cy, c.alpha_range.value_or(b.interval), b.index));
    }
  }
  if (want_json(c.format)) {
    Json j;
    j["model"] = model_block(c, s);
    Json r = Json::array();
    for (const AlphaBarResult& a : results) r.push_back(to_json(a));
    j["alpha_bars"] = r;
    write_atomic(c.out_dir / "alphabar.json", dump(j));
  }
  if (want_csv(c.format)) {
    std::string t = "interval_index,y_plus0,alpha_prime,alpha_double_prime,alpha_bar\n";
    for (const AlphaBarResult& a : results) {
      t += std::to_string(a.interval_index) + "," +
           csv_line({a.y_plus0, a.alpha_prime, a.alpha_double_prime, a.alpha_bar});
    }
    write_atomic(c.out_dir / "alphabar.csv", t);
  }
  for (const AlphaBarResult& a : results) {
    out << "alpha_bar[" << a.interval_index << "] = " << format_double(a.alpha_bar) << " (y0 "
        << format_double(a.y_plus0) << ")\n";
  }
  return kOk;
}

int cmd_check(const RunConfig& c, std::ostream& out) {
  const LienardSystem s = load_system(c);
  const std::vector<LimitCycle> cycles = find_limit_cycles(s, 0.0, c.grid, c.ctrl);
  Json j;
  j["model"] = model_block(c, s);
  j["detected_cycles"] = cycles.size();
  std::vector<TheoremReport> reports;
  std::optional<int> predicted;
  if (c.theorem) {
    reports.push_back(check_hypotheses(s, parse_theorem(*c.theorem), &cycles));
    predicted = reports.back().predicted_N;
  } else {
    const CountPrediction p = predict_count(s, &cycles);
    predicted = p.predicted_N;
    reports.push_back(p.report);
    Json tried = Json::array();
    for (const TheoremReport& r : p.tried) tried.push_back(to_json(r));
    j["tried"] = tried;
  }
  j["predicted_N"] = predicted ? Json(*predicted) : Json(nullptr);
  j["report"] = to_json(reports.front());
  std::string text = render_report(reports.front());
  text += "detected cycles: " + std::to_string(cycles.size()) + "\n";
  if (want_json(c.format)) write_atomic(c.out_dir / "check.json", dump(j));
  if (want_csv(c.format)) {
    std::string t = "theorem,id,verdict\n";
    for (const Hypothesis& h : reports.front().hypotheses) {
      t += std::string(theorem_name(reports.front().theorem)) + "," + h.id + "," +
           verdict_name(h.verdict) + "\n";
    }
    write_atomic(c.out_dir / "check.csv", t);
  }
  write_atomic(c.out_dir / "check.txt", text);
  out << text;
  return kOk;
}

int cmd_phi(const RunConfig& c, std::ostream& out) {
  const LienardSystem s = load_system(c);
  const double mu = c.params.count("mu") ? c.params.at("mu") : (c.builtin == "quintic" ? 0.1 : 1.0);
  const Interval range = c.alpha_range.value_or(Interval{0.01, 2.0 * s.scan_horizon()});
  const PhiProblem pr = phi_problem_from(s, range, mu);
  const PhiRoots roots = phi_roots(pr, std::max(c.grid, 100));
  Json j;
  j["model"] = model_block(c, s);
  Json p = Json::array();
  for (double v : pr.p) p.push_back(v);
  j["p"] = p;
  j["mu"] = mu;
  j["r_range"] = {number(range.lo), number(range.hi)};
  j["phi"] = to_json(roots);
  if (c.builtin == "quintic" && c.params.count("k")) {
    const QuinticRadii q = quintic_radii(c.params.at("k"));
    j["quintic_radii"] = {{"r1", q.r1 ? number(*q.r1) : Json(nullptr)},
                          {"r2", q.r2 ? number(*q.r2) : Json(nullptr)},
                          {"discriminant", q.discriminant}};
  }
  // Each radius as a canonical-plane point (-r, 0) mapped to the Lienard plane.
  Json mapped = Json::array();
  for (double r : roots.roots) {
    const auto [x, y] = canonical_to_lienard(-r, 0.0, s.F());
    mapped.push_back({{"r", number(r)}, {"x", number(x)}, {"y", number(y)}});
  }
  j["lienard_points"] = mapped;
  if (want_json(c.format)) write_atomic(c.out_dir / "phi.json", dump(j));
  if (want_csv(c.format)) {
    std::string t = "r,phi\n";
    for (const auto& [r, v] : roots.values) t += csv_line({r, v});
    write_atomic(c.out_dir / "phi.csv", t);
  }
  out << "phi: " << roots.roots.size() << " sign-change roots, " << roots.non_simple.size()
      << " tangential\n";
  for (double r : roots.roots) out << "  r = " << format_double(r) << "\n";
  for (double r : roots.non_simple) out << "  r = " << format_double(r) << " (tangential)\n";
  return kOk;
}

// ---------------------------------------------------------------- reproduce

Json read_golden(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open golden file " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("golden file " + path.string() + ": " + e.what());
  }
}

bool within(double value, double reference, double abs_tol, double rel_tol) {
  if (std::isnan(value)) return false;
  const double tol = std::max(abs_tol, rel_tol * std::abs(reference));
  return std::abs(value - reference) <= tol;
}

/// Compares `value` with a golden cell {reference, rel_tol | abs_tol}.
Json check_cell(const Json& cell, double value, bool& ok) {
  const double ref = number_from(cell.at("reference"));
  const double rel = cell.value("rel_tol", 0.0);
  const double abs_tol = cell.value("abs_tol", 0.0);
  const bool pass = within(value, ref, abs_tol, rel);
  ok = ok && pass;
  Json j;
  j["value"] = number(value);
  j["reference"] = number(ref);
  if (rel > 0.0) j["rel_tol"] = rel;
  if (abs_tol > 0.0) j["abs_tol"] = abs_tol;
  j["pass"] = pass;
  if (cell.contains("note")) j["note"] = cell.at("note");
  return j;
}

int reproduce_vdp_table(const RunConfig& c, const fs::path& golden_dir, std::ostream& out,
                        std::ostream& err) {
  const Json golden = read_golden(golden_dir / "vdp_table.json");
  const Json& rows = golden.at("rows");
  struct Row {
    double mu = 0.0;
    double y = 0.0;
    double alpha = 0.0;
    double alpha_ref_y = 0.0;
    std::size_t cycles = 0;
  };
  const std::vector<Row> computed = parallel_map<Row>(rows.size(), [&](std::size_t i) {
    const Json& g = rows[i];
    Row r;
    r.mu = g.at("mu").get<double>();
    const LienardSystem s = builtin("vdp", {{"mu", r.mu}});
    const std::vector<LimitCycle> cy = find_limit_cycles(s, 0.0, c.grid, c.ctrl);
    r.cycles = cy.size();
    const Interval br{std::sqrt(3.0), kInf};
    if (!cy.empty()) {
      r.y = cy.front().y_plus0;
      r.alpha = alpha_bar(s, cy.front(), br).alpha_bar;
    } else {
      r.y = r.alpha = std::nan("");
    }
    r.alpha_ref_y = alpha_bar(s, number_from(g.at("y_plus0").at("reference")), br).alpha_bar;
    return r;
  });

  bool all_ok = true;
  Json report_rows = Json::array();
  std::vector<TableRow> table;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const Json& g = rows[i];
    const Row& r = computed[i];
    bool ok = r.cycles == 1;
    Json j;
    j["mu"] = r.mu;
    j["cycle_count"] = r.cycles;
    j["y_plus0"] = check_cell(g.at("y_plus0"), r.y, ok);
    j["y_plus0_oracle"] = check_cell(g.at("y_plus0_oracle"), r.y, ok);
    j["alpha_bar"] = check_cell(g.at("alpha_bar"), r.alpha, ok);
    j["alpha_bar_from_reference_y"] =
        check_cell(g.at("alpha_bar_from_reference_y"), r.alpha_ref_y, ok);
    j["pass"] = ok;
    report_rows.push_back(j);
    table.push_back({r.mu, r.y, r.alpha});
    if (!ok) err << "vdp-table: mismatch at mu = " << format_double(r.mu) << "\n";
    all_ok = all_ok && ok;
  }
  const std::string text = render_table(table);
  write_atomic(c.out_dir / "vdp_table.txt", text);
  if (want_json(c.format)) {
    Json j;
    j["target"] = "vdp-table";
    j["rows"] = report_rows;
    j["pass"] = all_ok;
    write_atomic(c.out_dir / "vdp_table.json", dump(j));
  }
  if (want_csv(c.format)) {
    std::string t = "mu,y_plus0,alpha_bar,alpha_bar_from_reference_y\n";
    for (const Row& r : computed) t += csv_line({r.mu, r.y, r.alpha, r.alpha_ref_y});
    write_atomic(c.out_dir / "vdp_table.csv", t);
  }
  out << text;
  out << "vdp-table: " << (all_ok ? "all rows match" : "MISMATCH") << "\n";
  return all_ok ? kOk : kGoldenMismatch;
}

/// Everything an example check may ask for, computed once per model.
struct ExampleResult {
  ZeroStructure zs;
  std::vector<LimitCycle> cycles;
  std::vector<double> alpha_bars;
  std::optional<int> predicted;
};

ExampleResult run_example(const Json& model, const RunConfig& c) {
  Params params;
  if (model.contains("params")) {
    for (const auto& [k, v] : model.at("params").items()) params[k] = v.get<double>();
  }
  const LienardSystem s = builtin(model.at("builtin").get<std::string>(), params);
  ExampleResult r;
  r.zs = find_zero_structure(s);
  r.cycles = find_limit_cycles(s, 0.0, c.grid, c.ctrl);
  for (const LimitCycle& cy : r.cycles) {
    const Bracket b = bracket_for(s, r.zs, cy.amplitude);
    try {
      r.alpha_bars.push_back(alpha_bar(s, cy, b.interval, b.index).alpha_bar);
    } catch (const NumericalError&) {
      r.alpha_bars.push_back(std::nan(""));
    }
  }
  r.predicted = predict_count(s, &r.cycles).predicted_N;
  return r;
}

Json check_list(const Json& cell, const std::vector<double>& values, bool& ok) {
  const Json& refs = cell.at("reference");
  const double abs_tol = cell.value("abs_tol", 0.0);
  const double rel = cell.value("rel_tol", 0.0);
  bool pass = refs.size() <= values.size();
  if (cell.value("exact_length", true)) pass = pass && refs.size() == values.size();
  Json vals = Json::array();
  for (double v : values) vals.push_back(number(v));
  for (std::size_t i = 0; i < refs.size() && i < values.size(); ++i) {
    if (refs[i].is_null()) continue;
    pass = pass && within(values[i], number_from(refs[i]), abs_tol, rel);
  }
  ok = ok && pass;
  Json j;
  j["value"] = vals;
  j["reference"] = refs;
  if (abs_tol > 0.0) j["abs_tol"] = abs_tol;
  if (rel > 0.0) j["rel_tol"] = rel;
  j["pass"] = pass;
  if (cell.contains("note")) j["note"] = cell.at("note");
  return j;
}

int reproduce_examples(const RunConfig& c, const fs::path& golden_dir, std::ostream& out,
                       std::ostream& err) {
  const Json golden = read_golden(golden_dir / "examples.json");
  const Json& entries = golden.at("examples");
  const std::vector<ExampleResult> results = parallel_map<ExampleResult>(
      entries.size(), [&](std::size_t i) { return run_example(entries[i].at("model"), c); });

  bool all_ok = true;
  Json report = Json::array();
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const Json& e = entries[i];
    const ExampleResult& r = results[i];
    const Json& expect = e.at("expect");
    bool ok = true;
    Json j;
    j["id"] = e.at("id");
    j["model"] = e.at("model");
    Json cells;
    for (const auto& [key, cell] : expect.items()) {
      if (key == "cycle_count") {
        const int want = cell.at("reference").get<int>();
        const bool pass = static_cast<int>(r.cycles.size()) == want;
        ok = ok && pass;
        cells[key] = {{"value", r.cycles.size()}, {"reference", want}, {"pass", pass}};
        if (cell.contains("note")) cells[key]["note"] = cell.at("note");
      } else if (key == "predicted_N") {
        const Json want = cell.at("reference");
        const Json got = r.predicted ? Json(*r.predicted) : Json(nullptr);
        const bool pass = want == got;
        ok = ok && pass;
        cells[key] = {{"value", got}, {"reference", want}, {"pass", pass}};
      } else if (key == "stability") {
        Json got = Json::array();
        for (const LimitCycle& cy : r.cycles) got.push_back(stability_name(cy.stability));
        const bool pass = got == cell.at("reference");
        ok = ok && pass;
        cells[key] = {{"value", got}, {"reference", cell.at("reference")}, {"pass", pass}};
      } else {
        std::vector<double> values;
        if (key == "zeros") {
          values = r.zs.zeros;
        } else if (key == "extrema") {
          values = r.zs.extrema;
        } else if (key == "y_plus0") {
          for (const LimitCycle& cy : r.cycles) values.push_back(cy.y_plus0);
        } else if (key == "amplitude") {
          for (const LimitCycle& cy : r.cycles) values.push_back(cy.amplitude);
        } else if (key == "alpha_bar") {
          values = r.alpha_bars;
        } else {
          throw ConfigError("examples golden: unknown check '" + key + "'");
        }
        cells[key] = check_list(cell, values, ok);
      }
    }
    j["checks"] = cells;
    j["pass"] = ok;
    report.push_back(j);
    out << (ok ? "PASS " : "FAIL ") << e.at("id").get<std::string>() << "\n";
    if (!ok) err << "examples: mismatch in " << e.at("id").get<std::string>() << "\n";
    all_ok = all_ok && ok;
  }
  if (want_json(c.format)) {
    Json j;
    j["target"] = "examples";
    j["examples"] = report;
    j["pass"] = all_ok;
    write_atomic(c.out_dir / "examples.json", dump(j));
  }
  if (want_csv(c.format)) {
    std::string t = "id,pass\n";
    for (const Json& j : report) {
      t += j.at("id").get<std::string>() + "," + (j.at("pass").get<bool>() ? "1" : "0") + "\n";
    }
    write_atomic(c.out_dir / "examples.csv", t);
  }
  out << "examples: " << (all_ok ? "all entries match" : "MISMATCH") << "\n";
  return all_ok ? kOk : kGoldenMismatch;
}

int cmd_reproduce(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const fs::path golden = c.golden_dir.empty() ? fs::path(LIENARD_GOLDEN_DIR) : c.golden_dir;
  if (c.target == "vdp-table") return reproduce_vdp_table(c, golden, out, err);
  if (c.target == "examples") return reproduce_examples(c, golden, out, err);
  throw UsageError("unknown --target '" + c.target + "' (vdp-table or examples)");
}

}  // namespace

Interval parse_range(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ConfigError("range must look like A:B");
  try {
    std::size_t used_a = 0;
    std::size_t used_b = 0;
    const std::string a = text.substr(0, colon);
    const std::string b = text.substr(colon + 1);
    Interval r{std::stod(a, &used_a), std::stod(b, &used_b)};
    if (used_a != a.size() || used_b != b.size()) throw ConfigError("bad range");
    if (!(r.lo < r.hi)) throw ConfigError("range needs A < B");
    return r;
  } catch (const std::logic_error&) {
    throw ConfigError("range must look like A:B with numbers A < B");
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.ctrl.rtol > 0.0) || !(config.ctrl.atol > 0.0)) {
      throw UsageError("--rtol and --atol must be positive");
    }
    if (config.grid < 2) throw UsageError("--grid must be at least 2");
    switch (config.command) {
      case Command::simulate:
        return cmd_simulate(config, out);
      case Command::cycles:
        return cmd_cycles(config, out);
      case Command::alphabar:
        return cmd_alphabar(config, out);
      case Command::check:
        return cmd_check(config, out);
      case Command::phi:
        return cmd_phi(config, out);
      case Command::reproduce:
        return cmd_reproduce(config, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kModelError;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const DomainError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kNumericalError;
  }
  return kUsage;
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Limit cycles of Lienard systems x' = y - F(x), y' = -g(x)"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::optional<double> mu;
  std::optional<double> k;
  std::string range;
  std::string format = "both";
  std::string out_dir = "out";
  std::string model;
  std::string golden;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--builtin", cfg.builtin, "builtin model: vdp, vdp_bounded, quintic, two_cycle, three_cycle");
    sub->add_option("--model", model, "model file (JSON)");
    sub->add_option("--mu", mu, "parameter mu");
    sub->add_option("--k", k, "parameter k (quintic)");
    sub->add_option("--y0", cfg.y0, "starting intercept / scan top / standalone y0");
    sub->add_option("--alpha-range", range, "interval A:B");
    sub->add_option("--grid", cfg.grid, "grid points");
    sub->add_option("--rtol", cfg.ctrl.rtol, "relative tolerance");
    sub->add_option("--atol", cfg.ctrl.atol, "absolute tolerance");
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--format", format, "csv, json or both")
        ->check(CLI::IsMember({"csv", "json", "both"}));
  };
  struct Sub {
    const char* name;
    const char* help;
    Command cmd;
  };
  const Sub subs[] = {
      {"simulate", "integrate one turn from (0, y0)", Command::simulate},
      {"cycles", "detect limit cycles", Command::cycles},
      {"alphabar", "amplitude upper estimate", Command::alphabar},
      {"check", "verify theorem hypotheses", Command::check},
      {"phi", "small-mu radius criterion", Command::phi},
      {"reproduce", "regenerate reference tables and compare with golden files", Command::reproduce},
  };
  std::vector<std::pair<CLI::App*, Command>> apps;
  for (const Sub& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    if (s.cmd == Command::reproduce) {
      sub->add_option("--target", cfg.target, "vdp-table or examples")
          ->check(CLI::IsMember({"vdp-table", "examples"}));
      sub->add_option("--golden", golden, "golden file directory");
    }
    if (s.cmd == Command::check) {
      sub->add_option("--theorem", cfg.theorem, "classical, extension, two_cycle or n_cycle");
    }
    apps.emplace_back(sub, s.cmd);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  for (const auto& [sub, cmd] : apps) {
    if (sub->parsed()) cfg.command = cmd;
  }
  if (mu) cfg.params["mu"] = *mu;
  if (k) cfg.params["k"] = *k;
  cfg.model_path = model;
  cfg.out_dir = out_dir;
  cfg.golden_dir = golden;
  cfg.format = format == "csv" ? Format::csv : (format == "json" ? Format::json : Format::both);
  if (!range.empty()) {
    try {
      cfg.alpha_range = parse_range(range);
    } catch (const ConfigError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return kUsage;
    }
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace lienard::cli
