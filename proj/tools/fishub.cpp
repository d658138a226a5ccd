// fishub: exact one-sided Fisher p-values and constant-time upper bounds.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fishub/batch.hpp"
#include "fishub/bench.hpp"
#include "fishub/error.hpp"
#include "fishub/log_factorial.hpp"
#include "fishub/rank.hpp"
#include "fishub/reproduce.hpp"
#include "fishub/sweep.hpp"

namespace {

enum ExitCode : int { kOk = 0, kUsage = 1, kValidation = 2, kCheckFailed = 3 };

struct ValidationFailure {
  std::string message;
};

void print_line(std::ostream& out, const char* key, const std::string& value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%-16s", key);
  out << buf << value << '\n';
}

void write_eval(const fishub::BatchRecord& r, bool negated, std::ostream& out) {
  using fishub::format_value;
  const auto& rep = r.report;
  const auto& t = r.table;
  out << "rule            " << (negated ? "X -> not A" : "X -> A") << '\n';
  print_line(out, "table", "n=" + std::to_string(t.n()) + " mx=" + std::to_string(t.m_x()) +
                               " ma=" + std::to_string(t.m_a()) + " mxa=" + std::to_string(t.m_xa()));
  print_line(out, "j", std::to_string(t.j()));
  print_line(out, "lift", format_value(rep.stats.lift));
  print_line(out, "leverage", format_value(rep.stats.leverage));
  print_line(out, "odds_ratio", format_value(rep.stats.odds_ratio));
  if (rep.exact) {
    print_line(out, "p_fisher", format_value(rep.exact->linear_value) + "  (log " +
                                    format_value(rep.exact->log_value) + ", " +
                                    std::to_string(rep.exact->terms_evaluated) + " terms)");
  }
  auto bound = [&](const char* key, const fishub::PValue& v) {
    print_line(out, key, format_value(v.linear_value) + "  (log " + format_value(v.raw_log_value) + ")" +
                             (v.clamped ? " clamped" : ""));
  };
  bound("ub1", rep.ub1);
  bound("ub2", rep.ub2);
  bound(("ub" + std::to_string(rep.k)).c_str(), rep.ubk);
  print_line(out, "err_bound", format_value(rep.error_bound) + "  (ub" + std::to_string(rep.k) + ")");
  print_line(out, "chi2_stat", format_value(r.chi2.statistic));
  print_line(out, "chi2_p", format_value(r.chi2.p_one_sided));
  print_line(out, "min_expected", format_value(r.chi2.min_expected) +
                                      (r.chi2.rule_of_thumb_ok ? "  (chi2 applicable)" : "  (below 5)"));
  print_line(out, "guarantee_ub1", rep.guarantee.ub1_within_p0 ? "yes (lift >= 2)" : "no");
  print_line(out, "guarantee_ub2", rep.guarantee.ub2_within_p0 ? "yes (lift >= 1.618, ub2 <= 2 p_fisher)" : "no");
  out << "summary         p_fisher=" << (rep.exact ? format_value(rep.exact->linear_value) : "-")
      << " ub1=" << format_value(rep.ub1.linear_value) << " ub2=" << format_value(rep.ub2.linear_value) << " ub"
      << rep.k << '=' << format_value(rep.ubk.linear_value) << " chi2_p=" << format_value(r.chi2.p_one_sided)
      << '\n';
}

int cmd_eval(fishub::Count n, fishub::Count mx, fishub::Count ma, fishub::Count mxa,
             const fishub::BatchOptions& opts) {
  const fishub::InputRow row{0, "eval", n, mx, ma, mxa};
  const auto tbl = fishub::shared_log_factorials().snapshot(n);
  const fishub::RowOutcome o = fishub::evaluate_row(row, tbl, opts);
  if (o.reject) throw ValidationFailure{o.reject->reason + ": " + o.reject->detail};
  write_eval(*o.record, opts.negate, std::cout);
  return kOk;
}

std::unique_ptr<std::ostream> open_output(const std::string& path) {
  auto f = std::make_unique<std::ofstream>(path, std::ios::binary);
  if (!*f) throw std::runtime_error("cannot open '" + path + "' for writing");
  return f;
}

int cmd_batch(const std::string& input, const std::string& out_path, std::string rejects_path,
              const std::string& log_keys_path, const fishub::BatchOptions& opts) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + input + "'");
  std::unique_ptr<std::ostream> out_file;
  std::ostream* out = &std::cout;
  if (!out_path.empty()) {
    out_file = open_output(out_path);
    out = out_file.get();
    if (rejects_path.empty()) rejects_path = out_path + ".rejects.csv";
  }
  std::unique_ptr<std::ostream> rejects_file;
  std::ostream* rejects = &std::cerr;
  if (!rejects_path.empty()) {
    rejects_file = open_output(rejects_path);
    rejects = rejects_file.get();
  }
  std::unique_ptr<std::ostream> keys_file;
  if (!log_keys_path.empty()) keys_file = open_output(log_keys_path);

  const fishub::BatchSummary s = fishub::run_batch(in, *out, *rejects, keys_file.get(), opts);
  std::cerr << s.records << " rows written, " << s.rejects << " rejected\n";
  return kOk;
}

int cmd_sweep(const fishub::SweepSpec& spec, const std::string& out_path) {
  const auto points = fishub::run_sweep(spec);
  if (out_path.empty()) {
    fishub::write_sweep_csv(spec, points, std::cout);
  } else {
    fishub::write_sweep_csv(spec, points, *open_output(out_path));
  }
  return kOk;
}

int cmd_reproduce(const fishub::ReproduceOptions& opts) {
  const auto checks = fishub::check_rows(fishub::published_rows(), opts);
  return fishub::write_reproduction_report(checks, std::cout) ? kOk : kCheckFailed;
}

int cmd_rank(const std::string& input, std::size_t top_k, const fishub::BatchOptions& opts) {
  std::ifstream in(input, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + input + "'");
  const fishub::ParsedInput parsed = fishub::parse_input_csv(in);
  std::vector<fishub::BatchRecord> records;
  std::size_t rejected = parsed.rejects.size();
  for (auto& o : fishub::evaluate_rows(parsed.rows, opts)) {
    if (o.record) {
      records.push_back(std::move(*o.record));
    } else {
      ++rejected;
    }
  }
  if (rejected > 0) std::cerr << rejected << " rows rejected\n";
  fishub::write_rank_agreement(fishub::rank_agreement(records, top_k), std::cout);
  return kOk;
}

int cmd_bench(const std::vector<fishub::Count>& sizes, int reps) {
  std::vector<fishub::BenchConfig> configs;
  if (sizes.empty()) {
    configs = fishub::default_bench_configs();
  } else {
    for (fishub::Count n : sizes) configs.push_back({n, n / 2, n / 2, (n / 2) * 6 / 10});
  }
  const auto results = fishub::run_bench(configs, reps);
  fishub::write_bench_report(results, std::cout);
  return results.empty() || fishub::judge_bench(results).ok() ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact one-sided Fisher p-values and constant-time upper bounds for 2x2 tables"};
  app.require_subcommand(1);

  fishub::BatchOptions opts;
  bool no_exact = false;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--k", opts.k, "Number of exact leading terms for ub_k")->check(CLI::PositiveNumber);
    sub->add_flag("--negate", opts.negate, "Evaluate the rule X -> not A");
    sub->add_flag("--no-exact", no_exact, "Skip the O(J) exact p-value");
    sub->add_option("--jobs", opts.jobs, "Worker threads")->check(CLI::PositiveNumber);
  };

  fishub::Count n = 0, mx = 0, ma = 0, mxa = 0;
  auto* eval = app.add_subcommand("eval", "Evaluate one table");
  eval->add_option("n", n)->required();
  eval->add_option("mx", mx)->required();
  eval->add_option("ma", ma)->required();
  eval->add_option("mxa", mxa)->required();
  add_common(eval);

  std::string input, out_path, rejects_path, log_keys_path;
  auto* batch = app.add_subcommand("batch", "Evaluate a CSV of tables (id,n,mx,ma,mxa)");
  batch->add_option("input", input)->required();
  batch->add_option("--out", out_path, "Output CSV (default stdout)");
  batch->add_option("--rejects", rejects_path, "Rejects CSV (default <out>.rejects.csv, or stderr)");
  batch->add_option("--log-keys", log_keys_path, "Write unclamped natural-log values per row");
  add_common(batch);

  fishub::SweepSpec sweep_spec;
  std::vector<fishub::Count> sweep_ks;
  auto* sweep = app.add_subcommand("sweep", "Bounds as a function of m(XA) with fixed margins");
  sweep->add_option("n", sweep_spec.n)->required();
  sweep->add_option("mx", sweep_spec.m_x)->required();
  sweep->add_option("ma", sweep_spec.m_a)->required();
  sweep->add_option("--from", sweep_spec.from, "First m(XA)")->required();
  sweep->add_option("--to", sweep_spec.to, "Last m(XA)")->required();
  sweep->add_option("--k", sweep_ks, "Extra exact-term counts (ub3 is always included)")->delimiter(',');
  sweep->add_flag("--no-exact", no_exact, "Skip the exact p-value column");
  sweep->add_option("--out", out_path, "Output CSV (default stdout)");

  fishub::ReproduceOptions repro;
  auto* reproduce = app.add_subcommand("reproduce-tables", "Check the published comparison tables");
  reproduce->add_option("--table", repro.table, "Only rows of table 2 or 3")->check(CLI::Range(2, 3));
  reproduce->add_option("--case", repro.case_no, "Only rows of case 1, 2 or 3")->check(CLI::Range(1, 3));
  reproduce->add_option("--tolerance", repro.tolerance, "Override tolerance for p_fisher/ub columns")
      ->check(CLI::NonNegativeNumber);

  std::size_t top_k = 100;
  auto* rank = app.add_subcommand("rank-agreement", "Compare rankings by p_fisher, bounds and chi2");
  rank->add_option("input", input)->required();
  rank->add_option("--top", top_k, "Size of the top set compared");
  add_common(rank);

  std::vector<fishub::Count> sizes;
  int reps = 51;
  auto* bench = app.add_subcommand("bench", "Time exact evaluation against the bounds for growing J");
  bench->add_option("--reps", reps, "Timed repetitions per method")->check(CLI::NonNegativeNumber);
  bench->add_option("--sizes", sizes, "Data sizes n (m(X)=m(A)=n/2, m(XA)=0.6 m(X))")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  opts.include_exact = !no_exact;

  try {
    if (*eval) return cmd_eval(n, mx, ma, mxa, opts);
    if (*batch) return cmd_batch(input, out_path, rejects_path, log_keys_path, opts);
    if (*sweep) {
      sweep_spec.ks = sweep_ks;
      sweep_spec.include_exact = !no_exact;
      return cmd_sweep(sweep_spec, out_path);
    }
    if (*reproduce) return cmd_reproduce(repro);
    if (*rank) {
      if (no_exact) throw ValidationFailure{"rank-agreement needs exact p-values; drop --no-exact"};
      return cmd_rank(input, top_k, opts);
    }
    if (*bench) return cmd_bench(sizes, reps);
  } catch (const ValidationFailure& e) {
    std::cerr << "error: " << e.message << '\n';
    return kValidation;
  } catch (const fishub::Error& e) {
    std::cerr << "error: " << fishub::error_code_name(e.code()) << ": " << e.what() << '\n';
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kUsage;
}
