#include "lienard/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <system_error>

#include "lienard/errors.hpp"

namespace lienard {

namespace {

double get_number(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing field '" + key + "'");
  try {
    return number_from(j.at(key));
  } catch (const ConfigError&) {
    throw ConfigError(where + ": field '" + key + "' is not a number");
  }
}

Segment segment_from_json(const Json& j, std::size_t index) {
  const std::string where = "segment " + std::to_string(index);
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  Segment s;
  s.lo = get_number(j, "lo", where);
  s.hi = get_number(j, "hi", where);
  if (!j.contains("form") || !j.at("form").is_string()) {
    throw ConfigError(where + ": missing string field 'form'");
  }
  const std::string form = j.at("form").get<std::string>();
  if (form == "polynomial") {
    if (!j.contains("coeffs") || !j.at("coeffs").is_array()) {
      throw ConfigError(where + ": polynomial needs a 'coeffs' array");
    }
    Polynomial p;
    for (const Json& c : j.at("coeffs")) p.coeffs.push_back(number_from(c));
    s.form = p;
  } else if (form == "sinusoid") {
    s.form = Sinusoid{get_number(j, "amplitude", where), get_number(j, "angular_frequency", where),
                      get_number(j, "phase", where), get_number(j, "offset", where)};
  } else if (form == "ellipse_arc") {
    const double sign = get_number(j, "sign", where);
    if (sign != 1.0 && sign != -1.0) throw ConfigError(where + ": ellipse_arc sign must be 1 or -1");
    s.form = EllipseArc{get_number(j, "offset", where), get_number(j, "semi_y", where),
                        get_number(j, "center_x", where), get_number(j, "semi_x", where),
                        static_cast<int>(sign)};
  } else if (form == "sqrt_branch") {
    s.form = SqrtBranch{get_number(j, "offset", where), get_number(j, "scale", where),
                        get_number(j, "shift", where)};
  } else if (form == "constant") {
    s.form = Constant{get_number(j, "value", where)};
  } else {
    throw ConfigError(where + ": unknown form '" + form + "'");
  }
  return s;
}

Json segment_to_json(const Segment& s) {
  Json j;
  j["lo"] = number(s.lo);
  j["hi"] = number(s.hi);
  j["form"] = form_name(s.form);
  std::visit(
      [&](const auto& f) {
        using T = std::decay_t<decltype(f)>;
        if constexpr (std::is_same_v<T, Polynomial>) {
          Json c = Json::array();
          for (double v : f.coeffs) c.push_back(v);
          j["coeffs"] = c;
        } else if constexpr (std::is_same_v<T, Sinusoid>) {
          j["amplitude"] = f.amplitude;
          j["angular_frequency"] = f.angular_frequency;
          j["phase"] = f.phase;
          j["offset"] = f.offset;
        } else if constexpr (std::is_same_v<T, EllipseArc>) {
          j["offset"] = f.offset;
          j["semi_y"] = f.semi_y;
          j["center_x"] = f.center_x;
          j["semi_x"] = f.semi_x;
          j["sign"] = f.sign;
        } else if constexpr (std::is_same_v<T, SqrtBranch>) {
          j["offset"] = f.offset;
          j["scale"] = f.scale;
          j["shift"] = f.shift;
        } else {
          j["value"] = f.value;
        }
      },
      s.form);
  return j;
}

Json list(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::string fmt10(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

}  // namespace

Json number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

double number_from(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  throw ConfigError("expected a number, \"inf\", \"-inf\" or \"nan\"");
}

FunctionModel function_model_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("function model must be an object");
  const std::string name = j.value("name", std::string("unnamed"));
  const bool c1 = j.value("c1", false);
  if (!j.contains("segments") || !j.at("segments").is_array() || j.at("segments").empty()) {
    throw ConfigError("function model '" + name + "' needs a non-empty 'segments' array");
  }
  std::vector<Segment> segs;
  std::size_t i = 0;
  for (const Json& s : j.at("segments")) segs.push_back(segment_from_json(s, i++));
  return FunctionModel(name, std::move(segs), c1);
}

Json function_model_to_json(const FunctionModel& model) {
  Json j;
  j["name"] = model.name();
  j["c1"] = model.c1();
  Json segs = Json::array();
  for (const Segment& s : model.segments()) segs.push_back(segment_to_json(s));
  j["segments"] = segs;
  return j;
}

LienardSystem system_from_json(const Json& j) {
  if (!j.is_object()) throw ConfigError("model file must hold a JSON object");
  if (!j.contains("F")) throw ConfigError("model file needs an 'F' function model");
  FunctionModel F = function_model_from_json(j.at("F"));
  FunctionModel g = j.contains("g")
                        ? function_model_from_json(j.at("g"))
                        : FunctionModel("g=x", {{0.0, kInf, Polynomial{{0.0, 1.0}}}});
  const double d = j.contains("d") ? number_from(j.at("d")) : kInf;
  return LienardSystem(j.value("name", F.name()), std::move(F), std::move(g), d);
}

Json system_to_json(const LienardSystem& system) {
  Json j;
  j["name"] = system.name();
  j["d"] = number(system.d());
  j["F"] = function_model_to_json(system.F());
  j["g"] = function_model_to_json(system.g());
  return j;
}

LienardSystem load_system_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open model file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("model file " + path.string() + ": " + e.what());
  }
  return system_from_json(j);
}

Json to_json(const LimitCycle& c) {
  Json j;
  j["y_plus0"] = number(c.y_plus0);
  j["y_minus0"] = number(c.y_minus0);
  j["amplitude"] = number(c.amplitude);
  j["amplitude_y"] = number(c.amplitude_y);
  j["stability"] = stability_name(c.stability);
  j["multiplicity"] = c.multiplicity;
  return j;
}

Json to_json(const AlphaBarResult& a) {
  Json j;
  j["interval_index"] = a.interval_index;
  j["alpha_prime"] = number(a.alpha_prime);
  j["alpha_double_prime"] = number(a.alpha_double_prime);
  j["alpha_bar"] = number(a.alpha_bar);
  j["y_plus0"] = number(a.y_plus0);
  j["y_minus0"] = number(a.y_minus0);
  return j;
}

Json to_json(const TheoremReport& r) {
  Json j;
  j["theorem"] = theorem_name(r.theorem);
  Json hs = Json::array();
  for (const Hypothesis& h : r.hypotheses) {
    Json o;
    o["id"] = h.id;
    o["statement"] = h.statement;
    o["verdict"] = verdict_name(h.verdict);
    o["witness"] = list(h.witness);
    hs.push_back(o);
  }
  j["hypotheses"] = hs;
  j["predicted_N"] = r.predicted_N ? Json(*r.predicted_N) : Json(nullptr);
  Json ab = Json::array();
  for (const AlphaBarResult& a : r.alpha_bars) ab.push_back(to_json(a));
  j["alpha_bars"] = ab;
  j["extrema_compared"] = list(r.extrema_compared);
  j["notes"] = r.notes;
  return j;
}

Json to_json(const PhiRoots& r) {
  Json j;
  j["roots"] = list(r.roots);
  j["non_simple"] = list(r.non_simple);
  return j;
}

Json to_json(const ZeroStructure& z) {
  Json j;
  j["zeros"] = list(z.zeros);
  j["extrema"] = list(z.extrema);
  j["values_at_extrema"] = list(z.values_at_extrema);
  j["non_simple"] = list(z.non_simple);
  return j;
}

Json to_json(const PotentialDecomposition& d) {
  Json j;
  j["alpha"] = number(d.alpha);
  j["crossings"] = list(d.crossings);
  Json terms = Json::array();
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    Json t;
    t["label"] = d.labels[i];
    t["value"] = number(d.terms[i]);
    terms.push_back(t);
  }
  j["terms"] = terms;
  j["total"] = number(d.total);
  return j;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw ConfigError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw ConfigError("cannot move " + tmp.string() + " to " + path.string() + ": " + ec.message());
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string trajectory_csv(const Trajectory& traj) {
  std::string out = "t,x,y\n";
  for (const PhaseState& s : traj.states) {
    out += format_double(s.t) + "," + format_double(s.x) + "," + format_double(s.y) + "\n";
  }
  return out;
}

std::string events_csv(const Trajectory& traj) {
  std::string out = "kind,t,x,y\n";
  for (const Event& e : traj.events) {
    out += std::string(event_kind_name(e.kind)) + "," + format_double(e.state.t) + "," +
           format_double(e.state.x) + "," + format_double(e.state.y) + "\n";
  }
  return out;
}

std::string render_table(std::vector<TableRow> rows) {
  if (rows.empty()) throw ConfigError("render_table needs at least one row");
  std::stable_sort(rows.begin(), rows.end(),
                   [](const TableRow& a, const TableRow& b) { return a.mu < b.mu; });
  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "%-18s%-18s%-18s\n", "mu", "y_plus0", "alpha_bar");
  out += line;
  for (const TableRow& r : rows) {
    std::snprintf(line, sizeof line, "%-18s%-18s%-18s\n", fmt10(r.mu).c_str(),
                  fmt10(r.y_plus0).c_str(), fmt10(r.alpha_bar).c_str());
    out += line;
  }
  return out;
}

std::string render_report(const TheoremReport& r) {
  std::ostringstream os;
  os << "theorem: " << theorem_name(r.theorem) << "\n";
  char line[96];
  std::snprintf(line, sizeof line, "  %-5s %-12s %s\n", "id", "verdict", "witness");
  os << line;
  for (const Hypothesis& h : r.hypotheses) {
    std::string w;
    for (std::size_t i = 0; i < h.witness.size(); ++i) {
      if (i > 0) w += " ";
      w += fmt10(h.witness[i]);
    }
    std::snprintf(line, sizeof line, "  %-5s %-12s ", h.id.c_str(), verdict_name(h.verdict));
    os << line << w << "\n";
  }
  os << "predicted_N: " << (r.predicted_N ? std::to_string(*r.predicted_N) : "none") << "\n";
  for (const std::string& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace lienard
