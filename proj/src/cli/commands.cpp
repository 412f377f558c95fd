#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "ntacert/cli.hpp"

namespace ntacert::cli {

namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
}

Formula load_formula(const std::string& path) { return normalize(parse_formula(read_file(path))); }

double elapsed(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

void print_stats(const search::SearchStats& s, std::ostream& err) {
  err << "points " << s.points << ", selectors " << s.selectors << ", instantiations " << s.instantiations
      << ", box searches " << s.box_searches << ", degree queries " << s.degree_queries << ", forced prunes "
      << s.forced_prunes;
  if (s.dnf_restart) err << ", dnf conjuncts " << s.dnf_conjuncts;
  if (s.timed_out) err << ", timed out";
  err << ", " << std::setprecision(3) << s.seconds << " s\n";
}

double median(std::vector<double> v) {
  if (v.empty()) return 0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2;
}

}  // namespace

std::string default_certificate_path(const std::string& input) {
  fs::path p(input);
  p.replace_extension(".cert.json");
  return p.string();
}

int cmd_solve(const SolveOptions& o, std::ostream& out, std::ostream& err) {
  Formula phi;
  try {
    phi = load_formula(o.input);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  const search::SearchOutcome r = search::solve(phi, o.config);
  if (!o.quiet_stats) print_stats(r.stats, err);
  if (r.result != search::Result::Sat) {
    out << "unknown\n";
    return kExitUnknown;
  }
  const std::string path = o.out.value_or(default_certificate_path(o.input));
  try {
    write_file(path, cert::serialize(*r.certificate));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  out << "sat\n";
  err << "certificate: " << path << "\n";
  return kExitSat;
}

int cmd_check(const CheckOptions& o, std::ostream& out, std::ostream& err) {
  Formula phi;
  std::string text;
  try {
    phi = load_formula(o.formula);
    text = read_file(o.certificate);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  const auto start = std::chrono::steady_clock::now();
  cert::Certificate c;
  try {
    c = cert::deserialize(text);
  } catch (const cert::CertificateError& e) {
    out << "invalid\n  format: " << e.what() << "\n";
    return kExitInvalid;
  }
  cert::CheckOptions co;
  co.degree_budget = o.degree_budget;
  const cert::CheckReport r = cert::check_certificate(phi, c, co);
  const double seconds = elapsed(start);
  out << cert::verdict_name(r.verdict) << "\n";
  if (!r.valid() && !r.reason.empty()) out << "  reason: " << r.reason << "\n";
  for (const auto& cond : r.conditions) {
    out << "  " << cond.name << ": " << (!cond.checked ? "skipped" : cond.passed ? "ok" : "failed");
    if (!cond.detail.empty()) out << " (" << cond.detail << ")";
    out << "\n";
  }
  if (r.degree) out << "  degree " << *r.degree << "\n";
  for (const auto& w : r.warnings) out << "  warning: " << w << "\n";
  out << "  time " << std::setprecision(6) << seconds << " s\n";
  switch (r.verdict) {
    case cert::Verdict::Valid: return kExitValid;
    case cert::Verdict::Invalid: return kExitInvalid;
    default: return kExitUndetermined;
  }
}

BenchSummary run_bench(const BenchOptions& o, std::ostream& log) {
  BenchSummary s;
  std::vector<fs::path> files;
  if (fs::is_directory(o.directory))
    for (const auto& e : fs::directory_iterator(o.directory))
      if (e.is_regular_file() && e.path().extension() == ".smt2") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  fs::create_directories(o.output_dir);

  for (const auto& id : o.configs) {
    std::size_t solved = 0;
    for (const auto& file : files) {
      RunRecord rec;
      rec.benchmark = file.filename().string();
      rec.config = id;
      auto cfg = preset(id);
      Formula phi;
      try {
        if (!cfg) throw std::runtime_error("unknown configuration '" + id + "'");
        phi = load_formula(file.string());
      } catch (const std::exception& e) {
        rec.verdict = "error";
        rec.message = e.what();
        s.records.push_back(rec);
        log << rec.benchmark << " " << id << " error: " << rec.message << "\n";
        continue;
      }
      cfg->timeout_ms = o.timeout_ms;
      cfg->seed = o.seed;
      const auto t0 = std::chrono::steady_clock::now();
      const search::SearchOutcome r = search::solve(phi, *cfg);
      rec.solve_seconds = elapsed(t0);
      if (r.result == search::Result::Sat) {
        rec.verdict = "sat";
        rec.certificate = (fs::path(o.output_dir) / (file.stem().string() + "." + id + ".cert.json")).string();
        write_file(rec.certificate, cert::serialize(*r.certificate));
        // re-validate from the written file, as the check command would
        const auto t1 = std::chrono::steady_clock::now();
        cert::CheckReport cr;
        try {
          cr = cert::check_certificate(load_formula(file.string()), cert::deserialize(read_file(rec.certificate)));
        } catch (const std::exception& e) {
          cr.verdict = cert::Verdict::Invalid;
          cr.reason = e.what();
        }
        rec.check_seconds = elapsed(t1);
        rec.check_verdict = cert::verdict_name(cr.verdict);
        if (cr.valid()) {
          ++solved;
          s.ratios.push_back(rec.solve_seconds > 0 ? rec.check_seconds / rec.solve_seconds : 0.0);
        } else {
          ++s.validation_failures;
          rec.message = cr.reason;
        }
      } else {
        rec.verdict = r.stats.timed_out ? "timeout" : "unknown";
      }
      log << rec.benchmark << " " << id << " " << rec.verdict << " " << std::setprecision(3) << rec.solve_seconds
          << " s\n";
      s.records.push_back(std::move(rec));
    }
    s.solved.emplace_back(id, solved);
  }
  s.median_ratio = median(s.ratios);
  if (!s.ratios.empty()) {
    double sum = 0;
    for (double r : s.ratios) sum += r;
    s.mean_ratio = sum / static_cast<double>(s.ratios.size());
  }
  return s;
}

int cmd_bench(const BenchOptions& o, std::ostream& out, std::ostream& err) {
  BenchSummary s;
  try {
    s = run_bench(o, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  std::ostringstream tsv;
  tsv << "benchmark\tconfig\tverdict\tsolve_s\tcheck\tcheck_s\tcertificate\tmessage\n";
  for (const auto& r : s.records)
    tsv << r.benchmark << '\t' << r.config << '\t' << r.verdict << '\t' << r.solve_seconds << '\t' << r.check_verdict
        << '\t' << r.check_seconds << '\t' << r.certificate << '\t' << r.message << '\n';

  nlohmann::ordered_json j;
  j["directory"] = o.directory;
  j["timeout_ms"] = o.timeout_ms;
  j["seed"] = o.seed;
  nlohmann::ordered_json solved = nlohmann::ordered_json::object();
  for (const auto& [id, n] : s.solved) solved[id] = n;
  j["solved"] = solved;
  j["sat_records"] = s.ratios.size();
  j["median_check_solve_ratio"] = s.median_ratio;
  j["mean_check_solve_ratio"] = s.mean_ratio;
  j["validation_failures"] = s.validation_failures;
  try {
    write_file((fs::path(o.output_dir) / "results.tsv").string(), tsv.str());
    write_file((fs::path(o.output_dir) / "summary.json").string(), j.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }

  out << "config\tsolved\n";
  for (const auto& [id, n] : s.solved) out << id << '\t' << n << '\n';
  out << "median check/solve " << s.median_ratio << ", mean " << s.mean_ratio << "\n";
  if (s.validation_failures) {
    err << s.validation_failures << " certificate(s) failed validation\n";
    return 1;
  }
  return 0;
}

}  // namespace ntacert::cli
