#include "cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "coulomb/closedform.hpp"
#include "coulomb/errors.hpp"
#include "coulomb/numeval.hpp"
#include "coulomb/oracle.hpp"
#include "coulomb/shellmatch.hpp"
#include "json.hpp"

namespace coulomb::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------
// Coefficient rendering

Json poly_json(const RatPoly& p) {
  Json out = Json::object();
  for (int k = p.lowest_degree(); !p.is_zero() && k <= p.degree(); ++k) {
    const BigRational& c = p.coeff(k);
    if (c != 0) out[std::to_string(k)] = to_string(c);
  }
  return out;
}

RatPoly poly_from_json(const Json& j) {
  if (!j.is_object()) throw UsageError("polynomial must be a JSON object of power -> \"num/den\"");
  RatPoly out;
  for (const auto& [key, value] : j.items()) {
    std::size_t used = 0;
    const int power = std::stoi(key, &used);
    if (used != key.size()) throw UsageError("bad power key '" + key + "'");
    out += RatPoly::monomial(parse_rational(value.get<std::string>()), power);
  }
  return out;
}

Json r2_json(const QuantumNumbers& qn, bool with_labels) {
  const ExpEiForm f = assemble_R2(qn);
  Json j;
  if (with_labels) {
    j["n"] = qn.n();
    j["l"] = qn.l();
  }
  j["q_plus"] = poly_json(f.q_plus);
  j["q_ei"] = poly_json(f.q_ei);
  j["ei_arg_scale"] = to_string(BigRational(-2 * f.kappa));
  return j;
}

Json r1_json(const QuantumNumbers& qn, bool with_labels) {
  const ExpEiForm f = assemble_R1(qn);
  Json j;
  if (with_labels) {
    j["n"] = qn.n();
    j["l"] = qn.l();
  }
  j["q_minus"] = poly_json(f.q_minus);
  j["exp_arg_scale"] = to_string(BigRational(-f.kappa));
  return j;
}

void coeff_csv_rows(std::ostream& os, const std::string& prefix, const std::string& part, const RatPoly& p) {
  for (int k = p.lowest_degree(); !p.is_zero() && k <= p.degree(); ++k) {
    if (p.coeff(k) != 0) os << prefix << part << ',' << k << ',' << to_string(p.coeff(k)) << '\n';
  }
}

void coeff_csv(std::ostream& os, const QuantumNumbers& qn, bool r1, bool with_labels) {
  const std::string prefix = with_labels ? std::to_string(qn.n()) + "," + std::to_string(qn.l()) + "," : "";
  if (r1) {
    const ExpEiForm f = assemble_R1(qn);
    coeff_csv_rows(os, prefix, "q_minus", f.q_minus);
    os << prefix << "exp_arg_scale,1," << to_string(BigRational(-f.kappa)) << '\n';
  } else {
    const ExpEiForm f = assemble_R2(qn);
    coeff_csv_rows(os, prefix, "q_plus", f.q_plus);
    coeff_csv_rows(os, prefix, "q_ei", f.q_ei);
    os << prefix << "ei_arg_scale,1," << to_string(BigRational(-2 * f.kappa)) << '\n';
  }
}

// \frac{a}{b} r^k with the paper's habit of moving r^-k into the denominator.
std::string latex_term(const BigRational& c, int power, bool first) {
  std::ostringstream os;
  const bool negative = c < 0;
  if (negative) {
    os << (first ? "-" : " - ");
  } else if (!first) {
    os << " + ";
  }
  const BigInt num = abs(c.get_num());
  const BigInt den = c.get_den();
  auto rpow = [](int k) { return k == 1 ? std::string("r") : "r^{" + std::to_string(k) + "}"; };
  if (power < 0) {
    os << "\\frac{" << num.get_str() << "}{" << (den == 1 ? "" : den.get_str()) << rpow(-power) << "}";
  } else {
    const bool unit = num == 1 && den == 1;
    if (den != 1) {
      os << "\\frac{" << num.get_str() << "}{" << den.get_str() << "}";
    } else if (!unit || power == 0) {
      os << num.get_str();
    }
    if (power > 0) os << rpow(power);
  }
  return os.str();
}

std::string latex_poly(const RatPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (int k = p.lowest_degree(); k <= p.degree(); ++k) {
    if (p.coeff(k) == 0) continue;
    out += latex_term(p.coeff(k), k, first);
    first = false;
  }
  return out;
}

std::size_t term_count(const RatPoly& p) {
  return static_cast<std::size_t>(std::count_if(p.coefficients().begin(), p.coefficients().end(),
                                                [](const BigRational& c) { return c != 0; }));
}

std::string latex_exp(const BigRational& scale) {
  // e^{\frac{1}{n}r}
  if (scale == 1) return "e^{r}";
  if (scale == -1) return "e^{-r}";
  const BigRational a = abs(scale);
  return std::string("e^{") + (scale < 0 ? "-" : "") + "\\frac{" + a.get_num().get_str() + "}{" +
         a.get_den().get_str() + "}r}";
}

std::string latex_r2(const QuantumNumbers& qn) {
  const ExpEiForm f = assemble_R2(qn);
  const BigRational two_kappa = 2 * f.kappa;
  std::string lower = "-";
  if (two_kappa.get_num() != 1) lower += two_kappa.get_num().get_str();
  lower += "r";
  if (two_kappa.get_den() != 1) lower += "/" + two_kappa.get_den().get_str();
  auto group = [](const RatPoly& p) {
    return term_count(p) > 1 ? "\\left( " + latex_poly(p) + " \\right) " : latex_poly(p) + " ";
  };
  std::ostringstream os;
  os << "R_{2}\\left( " << qn.n() << "," << qn.l() << ",r\\right) = " << group(f.q_plus) << latex_exp(f.kappa)
     << " + " << group(f.q_ei) << latex_exp(-f.kappa) << " \\int_{" << lower << "}^{\\infty} \\frac{e^{-s}}{s}\\,ds";
  return os.str();
}

std::string latex_r1(const QuantumNumbers& qn) {
  const ExpEiForm f = assemble_R1(qn);
  std::ostringstream os;
  os << "R_{1}\\left( " << qn.n() << "," << qn.l() << ",r\\right) = ";
  os << (term_count(f.q_minus) > 1 ? "\\left( " + latex_poly(f.q_minus) + " \\right) " : latex_poly(f.q_minus) + " ")
     << latex_exp(-f.kappa);
  return os.str();
}

// ---------------------------------------------------------------------------
// Argument helpers

enum class Format { json, csv, latex };

Format parse_format(const std::string& s, bool latex_allowed) {
  if (s == "json") return Format::json;
  if (s == "csv") return Format::csv;
  if (s == "latex") {
    if (!latex_allowed) throw UsageError("latex output is only available for coefficient tables");
    return Format::latex;
  }
  throw UsageError("unknown format '" + s + "' (json, csv, latex)");
}

bool parse_which(const std::string& s) {
  if (s == "R1" || s == "r1") return true;
  if (s == "R2" || s == "r2") return false;
  throw UsageError("--which must be R1 or R2");
}

QuantumNumbers make_qn(int n, int l) {
  try {
    return QuantumNumbers(n, l);
  } catch (const InvalidQuantumNumbers& e) {
    throw UsageError(e.what());
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep)) out.push_back(item);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw UsageError("bad number '" + s + "' in " + what);
  return v;
}

// start:stop:count, linearly spaced.
std::vector<double> parse_grid(const std::string& spec) {
  const auto parts = split(spec, ':');
  if (parts.size() != 3) throw UsageError("--grid expects start:stop:count");
  const double start = parse_double(parts[0], "--grid");
  const double stop = parse_double(parts[1], "--grid");
  std::size_t used = 0;
  long count = -1;
  try {
    count = std::stol(parts[2], &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != parts[2].size() || count < 0) throw UsageError("--grid count must be a non-negative integer");
  std::vector<double> out;
  if (count == 0) return out;
  if (!(start > 0.0)) throw UsageError("--grid must be positive");
  if (count > 1 && !(stop > start)) throw UsageError("--grid must be increasing");
  for (long i = 0; i < count; ++i) {
    out.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
  }
  return out;
}

std::pair<double, double> parse_range(const std::string& spec) {
  auto parts = split(spec, ':');
  if (parts.size() != 2) parts = split(spec, ',');
  if (parts.size() != 2) throw UsageError("--b-range expects min:max");
  return {parse_double(parts[0], "--b-range"), parse_double(parts[1], "--b-range")};
}

// ---------------------------------------------------------------------------
// Verification

struct Row {
  VerificationReport report;
  std::optional<BigRational> constant;
};

using Task = std::function<std::vector<Row>()>;

const std::vector<std::string> kAllChecks{"golden", "ode", "wronskian", "p2", "numeric", "pv"};

std::set<std::string> parse_checks(const std::string& spec) {
  std::set<std::string> out;
  for (const auto& c : split(spec, ',')) {
    if (c == "all") {
      out.insert(kAllChecks.begin(), kAllChecks.end());
    } else if (c == "symbolic") {
      out.insert({"golden", "ode", "wronskian", "p2"});
    } else if (std::find(kAllChecks.begin(), kAllChecks.end(), c) != kAllChecks.end()) {
      out.insert(c);
    } else {
      throw UsageError("unknown check '" + c + "' (golden, ode, wronskian, p2, numeric, pv, symbolic, all)");
    }
  }
  if (out.empty()) throw UsageError("--checks is empty");
  return out;
}

std::vector<GoldenEntry> load_golden(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read golden file '" + path + "'");
  std::vector<GoldenEntry> out;
  try {
    const Json doc = Json::parse(in);
    const Json& entries = doc.is_object() && doc.contains("entries") ? doc["entries"] : doc;
    if (!entries.is_array()) throw UsageError("golden file must hold an array of entries");
    for (const Json& e : entries) {
      GoldenEntry g;
      g.n = e.at("n").get<int>();
      g.l = e.at("l").get<int>();
      g.q_plus = poly_from_json(e.at("q_plus"));
      g.q_ei = poly_from_json(e.at("q_ei"));
      g.ei_arg_scale = parse_rational(e.at("ei_arg_scale").get<std::string>());
      out.push_back(std::move(g));
    }
  } catch (const Json::exception& e) {
    throw UsageError("malformed golden file '" + path + "': " + e.what());
  } catch (const std::invalid_argument& e) {
    throw UsageError("malformed golden file '" + path + "': " + e.what());
  }
  return out;
}

std::vector<double> numeric_radii(const QuantumNumbers& qn) {
  // Twenty fixed pseudo-random radii per state, reproducible across runs.
  std::mt19937_64 rng(static_cast<std::uint64_t>(1000 * qn.n() + qn.l()));
  std::uniform_real_distribution<double> dist(0.05, 4.0 * qn.n());
  std::vector<double> out(20);
  for (double& r : out) r = dist(rng);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Task> build_tasks(int n_max, const std::set<std::string>& checks, const std::vector<GoldenEntry>& golden) {
  std::vector<Task> tasks;
  if (checks.count("golden")) {
    for (const GoldenEntry& g : golden) {
      if (g.n > n_max) continue;
      tasks.emplace_back([g] {
        const std::vector<GoldenEntry> one{g};
        return std::vector<Row>{{golden_table_check(one).front(), std::nullopt}};
      });
    }
  }
  for (int n = 1; n <= n_max; ++n) {
    for (int l = 0; l < n; ++l) {
      const QuantumNumbers qn(n, l);
      if (checks.count("ode")) {
        tasks.emplace_back([qn] {
          Row a{ode_residual_symbolic(assemble_R1(qn), qn), std::nullopt};
          Row b{ode_residual_symbolic(assemble_R2(qn), qn), std::nullopt};
          a.report.check_name = "ode_R1";
          b.report.check_name = "ode_R2";
          return std::vector<Row>{a, b};
        });
      }
      if (checks.count("wronskian")) {
        tasks.emplace_back([qn] {
          WronskianResult w = wronskian_symbolic(qn);
          return std::vector<Row>{{std::move(w.report), w.r2_constant}};
        });
      }
      if (checks.count("p2")) {
        tasks.emplace_back([qn] {
          Row r{p2_equivalence_check(qn.n_r(), qn.m()), std::nullopt};
          r.report.subject = qn;
          return std::vector<Row>{r};
        });
      }
      if (checks.count("numeric")) {
        tasks.emplace_back([qn] {
          const std::vector<double> radii = numeric_radii(qn);
          Row a{ode_residual_numeric(assemble_R1(qn), qn, radii), std::nullopt};
          Row b{ode_residual_numeric(assemble_R2(qn), qn, radii), std::nullopt};
          a.report.check_name = "numeric_R1";
          b.report.check_name = "numeric_R2";
          return std::vector<Row>{a, b};
        });
      }
      if (checks.count("pv") && qn.n_r() + qn.m() <= 8) {
        tasks.emplace_back([qn] {
          const std::vector<double> xs{0.5, 1.5, 4.0};
          Row a{phi2_pv_check(qn.n_r(), qn.m(), xs), std::nullopt};
          Row b{pole_split_identity_check(qn.n_r(), qn.m(), xs), std::nullopt};
          a.report.subject = b.report.subject = qn;
          return std::vector<Row>{a, b};
        });
      }
    }
  }
  return tasks;
}

Json row_json(const Row& row) {
  const VerificationReport& r = row.report;
  Json j;
  j["check"] = r.check_name;
  j["subject"] = r.subject_label;
  if (r.subject) {
    j["n"] = r.subject->n();
    j["l"] = r.subject->l();
  }
  j["passed"] = r.passed;
  j["exact"] = r.exact;
  j["residual_norm"] = r.residual_norm;
  if (row.constant) j["r2_constant"] = to_string(*row.constant);
  j["details"] = r.details;
  return j;
}

void row_csv(std::ostream& os, const Row& row) {
  const VerificationReport& r = row.report;
  os << csv_field(r.check_name) << ',' << csv_field(r.subject_label) << ',' << (r.passed ? "true" : "false") << ','
     << (r.exact ? "true" : "false") << ',' << fmt_double(r.residual_norm) << ','
     << (row.constant ? to_string(*row.constant) : "") << ',' << csv_field(r.details) << '\n';
}

// Runs the tasks, handing each result to `sink` in task order. With `parallel`
// the tasks run on worker threads and results are released in order as soon
// as every earlier task has finished.
void run_tasks(const std::vector<Task>& tasks, bool parallel, const std::function<void(std::vector<Row>&&)>& sink) {
  auto guarded = [](const Task& t) {
    try {
      return t();
    } catch (const std::exception& e) {
      VerificationReport r;
      r.check_name = "exception";
      r.details = e.what();
      return std::vector<Row>{{r, std::nullopt}};
    }
  };
  if (!parallel || tasks.size() < 2) {
    for (const Task& t : tasks) sink(guarded(t));
    return;
  }
  const unsigned workers = std::max(2u, std::min<unsigned>(std::thread::hardware_concurrency(), 16u));
  std::vector<std::optional<std::vector<Row>>> results(tasks.size());
  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < tasks.size(); i = next++) {
        std::vector<Row> rows = guarded(tasks[i]);
        {
          std::lock_guard lock(mu);
          results[i] = std::move(rows);
        }
        cv.notify_all();
      }
    });
  }
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    std::vector<Row> rows;
    {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return results[i].has_value(); });
      rows = std::move(*results[i]);
      results[i].reset();
    }
    sink(std::move(rows));
  }
}

// ---------------------------------------------------------------------------
// Subcommands

struct Options {
  int n = 0;
  int l = -1;
  std::string which = "R2";
  std::string grid;
  std::string format;
  std::string out;
  int n_max = 4;
  std::string checks = "all";
  bool parallel = false;
  std::string golden;
  double a = 0.0;
  std::string b_range;
  double step = 0.01;
};

int cmd_coeffs(const Options& o, std::ostream& os) {
  const QuantumNumbers qn = make_qn(o.n, o.l);
  const bool r1 = parse_which(o.which);
  switch (parse_format(o.format.empty() ? "json" : o.format, true)) {
    case Format::json:
      os << (r1 ? r1_json(qn, false) : r2_json(qn, false)).dump(2) << '\n';
      break;
    case Format::csv:
      os << "part,power,coefficient\n";
      coeff_csv(os, qn, r1, false);
      break;
    case Format::latex:
      os << (r1 ? latex_r1(qn) : latex_r2(qn)) << '\n';
      break;
  }
  return kOk;
}

int cmd_table(const Options& o, std::ostream& os) {
  if (o.n_max < 1) throw UsageError("--nmax must be >= 1");
  const bool r1 = parse_which(o.which);
  const auto table = paper_units_table(o.n_max);
  switch (parse_format(o.format.empty() ? "csv" : o.format, true)) {
    case Format::json: {
      Json arr = Json::array();
      for (const auto& e : table) arr.push_back(r1 ? r1_json(e.qn, true) : r2_json(e.qn, true));
      os << arr.dump(2) << '\n';
      break;
    }
    case Format::csv:
      os << "n,l,part,power,coefficient\n";
      for (const auto& e : table) coeff_csv(os, e.qn, r1, true);
      break;
    case Format::latex:
      for (const auto& e : table) os << "\\[\n" << (r1 ? latex_r1(e.qn) : latex_r2(e.qn)) << "\n\\]\n";
      break;
  }
  return kOk;
}

int cmd_eval(const Options& o, std::ostream& os) {
  const QuantumNumbers qn = make_qn(o.n, o.l);
  const bool r1 = parse_which(o.which);
  if (o.grid.empty()) throw UsageError("--grid start:stop:count is required");
  const std::vector<double> grid = parse_grid(o.grid);
  const Format format = parse_format(o.format.empty() ? "csv" : o.format, false);
  const ExpEiForm f = r1 ? assemble_R1(qn) : assemble_R2(qn);

  Json rows = Json::array();
  if (format == Format::csv) os << "r,value,est_rel_error,method\n";
  for (double r : grid) {
    std::string value, error, method;
    try {
      const EvalResult v = eval_form(f, r);
      value = fmt_double(v.value);
      error = fmt_double(v.est_rel_error);
      method = to_string(v.method);
    } catch (const OverflowSignal&) {
      value = "inf";
      error = "inf";
      method = "overflow";
    }
    if (format == Format::csv) {
      os << fmt_double(r) << ',' << value << ',' << error << ',' << method << '\n';
    } else {
      Json row;
      row["r"] = r;
      if (method == "overflow") {
        row["value"] = nullptr;
        row["est_rel_error"] = nullptr;
      } else {
        row["value"] = std::stod(value);
        row["est_rel_error"] = std::stod(error);
      }
      row["method"] = method;
      rows.push_back(std::move(row));
    }
  }
  if (format == Format::json) {
    Json doc;
    doc["n"] = qn.n();
    doc["l"] = qn.l();
    doc["which"] = r1 ? "R1" : "R2";
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& os, std::ostream& err) {
  if (o.n_max < 1) throw UsageError("--nmax must be >= 1");
  const std::set<std::string> checks = parse_checks(o.checks);
  const Format format = parse_format(o.format.empty() ? "csv" : o.format, false);
  const std::vector<GoldenEntry> golden = o.golden.empty() ? golden_table() : load_golden(o.golden);
  const std::vector<Task> tasks = build_tasks(o.n_max, checks, golden);

  bool all_passed = true;
  std::size_t count = 0;
  std::vector<std::string> failures;
  Json reports = Json::array();
  if (format == Format::csv) os << "check,subject,passed,exact,residual_norm,r2_constant,details\n";
  run_tasks(tasks, o.parallel, [&](std::vector<Row>&& rows) {
    for (const Row& row : rows) {
      ++count;
      if (!row.report.passed) {
        all_passed = false;
        failures.push_back(row.report.check_name + " " + row.report.subject_label + ": " + row.report.details);
      }
      if (format == Format::csv) {
        row_csv(os, row);
        os.flush();
      } else {
        reports.push_back(row_json(row));
      }
    }
  });
  if (format == Format::json) {
    Json doc;
    doc["n_max"] = o.n_max;
    doc["passed"] = all_passed;
    doc["reports"] = std::move(reports);
    os << doc.dump(2) << '\n';
  }
  for (const auto& f : failures) err << "FAILED " << f << '\n';
  if (!all_passed) err << failures.size() << " of " << count << " checks failed\n";
  return all_passed ? kOk : kVerificationFailed;
}

Json scan_json(const MismatchScan& scan) {
  Json arr = Json::array();
  for (const auto& [b, m] : scan) arr.push_back(Json{{"b", b}, {"mismatch", m}});
  return arr;
}

int cmd_shell(const Options& o, std::ostream& os, std::ostream& err) {
  ShellConfig config;
  config.qn = make_qn(o.n, o.l);
  config.a = o.a;
  if (o.b_range.empty()) throw UsageError("--b-range min:max is required");
  std::tie(config.b_min, config.b_max) = parse_range(o.b_range);
  config.grid_step = o.step;
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const Format format = parse_format(o.format.empty() ? "json" : o.format, false);

  MatchResult res;
  try {
    res = match_shell(config);
  } catch (const NoRootInRange& e) {
    err << "no root: " << e.what() << '\n';
    if (format == Format::json) {
      Json doc;
      doc["error"] = "no_root";
      doc["scan"] = scan_json(e.scan());
      os << doc.dump(2) << '\n';
    } else {
      os << "b,mismatch\n";
      for (const auto& [b, m] : e.scan()) os << fmt_double(b) << ',' << fmt_double(m) << '\n';
    }
    return kNoRoot;
  }
  const ContinuityResiduals cont = continuity_residuals(config, res);
  const std::vector<double> grid = o.grid.empty() ? std::vector<double>{} : parse_grid(o.grid);
  const auto wave = piecewise_wavefunction(config, res, grid);

  if (format == Format::json) {
    Json doc;
    doc["n"] = config.qn.n();
    doc["l"] = config.qn.l();
    doc["a"] = config.a;
    doc["b_min"] = config.b_min;
    doc["b_max"] = config.b_max;
    doc["grid_step"] = config.grid_step;
    doc["b_star"] = res.b_star;
    doc["c1"] = res.c1;
    doc["c2"] = res.c2;
    doc["mismatch"] = res.mismatch;
    doc["continuity_at_a"] = cont.at_a;
    doc["continuity_at_b"] = cont.at_b;
    if (!wave.empty()) {
      Json w = Json::array();
      for (const auto& s : wave) w.push_back(Json{{"r", s.r}, {"value", s.value}, {"region", s.region}});
      doc["wavefunction"] = std::move(w);
    }
    os << doc.dump(2) << '\n';
  } else {
    os << "b_star,c1,c2,mismatch,continuity_at_a,continuity_at_b\n"
       << fmt_double(res.b_star) << ',' << fmt_double(res.c1) << ',' << fmt_double(res.c2) << ','
       << fmt_double(res.mismatch) << ',' << fmt_double(cont.at_a) << ',' << fmt_double(cont.at_b) << '\n';
    if (!wave.empty()) {
      os << "\nr,value,region\n";
      for (const auto& s : wave) os << fmt_double(s.r) << ',' << fmt_double(s.value) << ',' << s.region << '\n';
    }
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Closed-form regular and irregular hydrogenic radial solutions"};
  app.require_subcommand(1);
  Options o;

  auto add_qn = [&](CLI::App* sub) {
    sub->add_option("--n", o.n, "principal quantum number")->required();
    sub->add_option("--l", o.l, "angular momentum, 0 <= l < n")->required();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "json, csv or latex");
    sub->add_option("--out", o.out, "write to this file instead of standard output");
  };

  CLI::App* coeffs = app.add_subcommand("coeffs", "exact Laurent coefficients of R1 or R2");
  add_qn(coeffs);
  coeffs->add_option("--which", o.which, "R1 or R2 (default R2)");
  add_output(coeffs);

  CLI::App* eval = app.add_subcommand("eval", "evaluate R1 or R2 on a grid");
  add_qn(eval);
  eval->add_option("--which", o.which, "R1 or R2 (default R2)");
  eval->add_option("--grid", o.grid, "start:stop:count")->required();
  add_output(eval);

  CLI::App* verify = app.add_subcommand("verify", "run the oracle checks");
  verify->add_option("--nmax", o.n_max, "largest n to check (default 4)");
  verify->add_option("--checks", o.checks, "comma list of golden, ode, wronskian, p2, numeric, pv, symbolic, all");
  verify->add_flag("--parallel", o.parallel, "run checks on worker threads");
  verify->add_option("--golden", o.golden, "JSON table of entries to check instead of the built-in one");
  add_output(verify);

  CLI::App* table = app.add_subcommand("table", "coefficient table for all n <= nmax");
  table->add_option("--nmax", o.n_max, "largest n (default 4)");
  table->add_option("--which", o.which, "R1 or R2 (default R2)");
  add_output(table);

  CLI::App* shell = app.add_subcommand("shell", "shell-matching demo");
  add_qn(shell);
  shell->add_option("--a", o.a, "inner radius")->required();
  shell->add_option("--b-range", o.b_range, "min:max for the outer radius")->required();
  shell->add_option("--step", o.step, "integration grid step (default 0.01)");
  shell->add_option("--grid", o.grid, "optional start:stop:count for the piecewise wavefunction");
  add_output(shell);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out, std::ios::binary);
    if (!file) {
      err << "usage error: cannot write '" << o.out << "'\n";
      return kUsage;
    }
  }
  std::ostream& os = o.out.empty() ? out : file;

  try {
    if (*coeffs) return cmd_coeffs(o, os);
    if (*eval) return cmd_eval(o, os);
    if (*verify) return cmd_verify(o, os, err);
    if (*table) return cmd_table(o, os);
    if (*shell) return cmd_shell(o, os, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kVerificationFailed;
  }
  return kUsage;
}

}  // namespace coulomb::cli
