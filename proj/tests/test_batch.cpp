#include <doctest.h>

#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fishub/batch.hpp"
#include "fishub/bench.hpp"
#include "fishub/error.hpp"
#include "fishub/rank.hpp"
#include "fishub/reproduce.hpp"
#include "fishub/sweep.hpp"
#include "support/corpus.hpp"

using namespace fishub;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

struct BatchRun {
  std::string out;
  std::string rejects;
  std::string keys;
  BatchSummary summary;
};

BatchRun run(const std::string& input, BatchOptions opts = {}) {
  std::istringstream in(input);
  std::ostringstream out, rejects, keys;
  BatchRun r;
  r.summary = run_batch(in, out, rejects, &keys, opts);
  r.out = out.str();
  r.rejects = rejects.str();
  r.keys = keys.str();
  return r;
}

std::string random_input(std::uint64_t seed, int rows) {
  std::mt19937_64 rng(seed);
  std::string s = "id,n,mx,ma,mxa\n";
  for (int i = 0; i < rows; ++i) {
    const auto t = testing::random_table(rng, 2, 3000);
    s += "r" + std::to_string(i) + ',' + std::to_string(t.n()) + ',' + std::to_string(t.m_x()) + ',' +
         std::to_string(t.m_a()) + ',' + std::to_string(t.m_xa()) + '\n';
  }
  return s;
}

ReproduceOptions filter(std::optional<int> table, std::optional<int> case_no, std::optional<double> tol = {}) {
  ReproduceOptions o;
  o.table = table;
  o.case_no = case_no;
  o.tolerance = tol;
  return o;
}

}  // namespace

TEST_SUITE("batch") {
  TEST_CASE("published n=1000 rows through the batch path") {
    const auto r = run(
        "id,n,mx,ma,mxa\r\n"
        "c1a,1000,500,500,263\r\n"
        "c1b,1000,500,500,269\r\n"
        "c1c,1000,500,500,275\r\n"
        "c2a,1000,200,250,60\r\n"
        "c2b,1000,200,250,63\r\n"
        "c2c,1000,200,250,68\r\n");
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == kOutputHeader);
    CHECK(lines[1] ==
          "c1a,1000,500,500,263,237,1.052,0.013,1.23144,0.0569006,0.0695594,0.0673587,0.0616785,3,0.0362824,"
          "0.0500484,250,0,0,0");
    CHECK(lines[4].starts_with("c2a,1000,200,250,60,140,1.2,0.01,"));
    CHECK(r.summary.records == 6);
    CHECK(r.summary.rejects == 0);
    CHECK(r.out.find('\r') == std::string::npos);
    CHECK(lines_of(r.keys).size() == 7);
  }

  TEST_CASE("empty body gives a header-only output") {
    const auto r = run("id,n,mx,ma,mxa\n");
    CHECK(r.out == std::string(kOutputHeader) + "\n");
    CHECK(r.rejects == std::string(kRejectsHeader) + "\n");
    CHECK(r.summary.records == 0);
  }

  TEST_CASE("bad rows become rejects with reason codes") {
    const auto r = run(
        "id,n,mx,ma,mxa\n"
        "ok,1000,500,500,263\n"
        "big,1000,500,500,600\n"
        "deg,1000,0,500,0\n"
        "neg,1000,500,500,240\n"
        "indep,1000,500,500,250\n"
        "text,1000,abc,500,263\n"
        "short,1000,500\n"
        "\n"
        "ok2,10,4,4,4\n");
    CHECK(r.summary.records == 2);
    CHECK(r.summary.rejects == 6);
    const auto rej = lines_of(r.rejects);
    REQUIRE(rej.size() == 7);
    CHECK(rej[1].starts_with("3,big,MARGIN_VIOLATION,"));
    CHECK(rej[2].starts_with("4,deg,DEGENERATE_MARGIN,"));
    CHECK(rej[3].starts_with("5,neg,NEGATIVE_DEPENDENCY,"));
    CHECK(rej[4].starts_with("6,indep,NEGATIVE_DEPENDENCY,"));
    CHECK(rej[5].starts_with("7,text,MALFORMED,"));
    CHECK(rej[6].starts_with("8,short,MALFORMED,"));
  }

  TEST_CASE("negate evaluates X -> not A") {
    BatchOptions opts;
    opts.negate = true;
    const auto r = run("id,n,mx,ma,mxa\nneg,1000,500,500,237\n", opts);
    const auto lines = lines_of(r.out);
    REQUIRE(lines.size() == 2);
    CHECK(lines[1].starts_with("neg,1000,500,500,263,237,"));
  }

  TEST_CASE("no-exact leaves p_fisher empty") {
    BatchOptions opts;
    opts.include_exact = false;
    const auto lines = lines_of(run("id,n,mx,ma,mxa\na,1000,500,500,263\n", opts).out);
    CHECK(lines[1].find(",0.0569006,") == std::string::npos);
    CHECK(lines[1].find(",1.23144,,0.0695594,") != std::string::npos);
  }

  TEST_CASE("missing or wrong header is an error") {
    std::istringstream a("");
    CHECK_THROWS(parse_input_csv(a));
    std::istringstream b("id,n,mx\n1,2,3\n");
    CHECK_THROWS(parse_input_csv(b));
  }

  TEST_CASE("every row lands in exactly one of output and rejects") {
    const std::string input = random_input(41, 500);
    const auto r = run(input);
    CHECK(r.summary.records + r.summary.rejects == 500);
    CHECK(lines_of(r.out).size() == r.summary.records + 1);
    CHECK(lines_of(r.rejects).size() == r.summary.rejects + 1);
  }

  TEST_CASE("parallel evaluation is byte-identical to the serial reference") {
    const std::string input = random_input(43, 800);
    BatchOptions serial;
    BatchOptions parallel;
    parallel.jobs = 4;
    const auto a = run(input, serial);
    const auto b = run(input, parallel);
    CHECK(a.out == b.out);
    CHECK(a.rejects == b.rejects);
    CHECK(a.keys == b.keys);
    CHECK(run(input, serial).out == a.out);
  }

  TEST_CASE("format_value") {
    CHECK(format_value(0.000963486) == "0.000963486");
    CHECK(format_value(1.0) == "1");
    CHECK(format_value(INFINITY) == "inf");
    CHECK(format_value(1.23456789e-300) == "1.23457e-300");
  }
}

TEST_SUITE("sweep") {
  TEST_CASE("n=1000, m(X)=200, m(A)=250 sweep facts") {
    SweepSpec spec{1000, 200, 250, 51, 120, {3, 5}, true};
    const auto points = run_sweep(spec);
    REQUIRE(points.size() == 70);
    auto at = [&](Count m) -> const SweepPoint& { return points[static_cast<std::size_t>(m - 51)]; };
    CHECK(at(55).record.table.j() + 1 == 146);
    CHECK(at(65).record.table.j() + 1 == 136);
    CHECK(at(55).record.report.stats.lift == doctest::Approx(1.1).epsilon(1e-12));
    CHECK(at(60).record.report.stats.lift == doctest::Approx(1.2).epsilon(1e-12));
    CHECK(at(65).record.report.stats.lift == doctest::Approx(1.3).epsilon(1e-12));
    REQUIRE(at(60).extra.size() == 1);  // ub5; ub3 is a fixed column
    CHECK(sweep_header(spec) == "mxa,j,terms,lift,leverage,p_fisher,ub1,ub2,ub3,ub5,chi2_p");

    std::ostringstream csv;
    write_sweep_csv(spec, points, csv);
    CHECK(lines_of(csv.str()).size() == 71);
  }

  TEST_CASE("single-point sweep agrees with the batch row") {
    const auto points = run_sweep({1000, 500, 500, 275, 275, {}, true});
    REQUIRE(points.size() == 1);
    const auto lt = shared_log_factorials().snapshot(1000);
    const auto o = evaluate_row({1, "x", 1000, 500, 500, 275}, lt, {});
    REQUIRE(o.record);
    CHECK(points[0].record.report.exact->log_value == o.record->report.exact->log_value);
    CHECK(points[0].record.report.ubk.log_value == o.record->report.ubk.log_value);
  }

  TEST_CASE("invalid sweep ranges") {
    CHECK_THROWS_AS(run_sweep({1000, 200, 250, 51, 300, {}, true}), Error);  // 300 > min(mx, ma)
    CHECK_THROWS_AS(run_sweep({1000, 200, 250, 40, 60, {}, true}), Error);   // crosses independence
    CHECK_THROWS_AS(run_sweep({1000, 200, 250, 60, 55, {}, true}), Error);
    CHECK_THROWS_AS(run_sweep({1000, 200, 250, 60, 61, {0}, true}), Error);
  }
}

TEST_SUITE("reproduce") {
  TEST_CASE("printed tolerances") {
    CHECK(printed_tolerance("0.0569") == doctest::Approx(5e-5));
    CHECK(printed_tolerance("0.0096") == doctest::Approx(5e-5));
    CHECK(printed_tolerance("0.00096") == doctest::Approx(5e-6));
    CHECK(printed_tolerance("0.050") == doctest::Approx(5e-4));
    CHECK(printed_value("0.00103") == 0.00103);
  }

  TEST_CASE("filters") {
    CHECK(published_rows().size() == 18);
    CHECK(check_rows(published_rows(), filter({}, 1)).size() == 6);
    CHECK(check_rows(published_rows(), filter(3, {})).size() == 9);
    CHECK(check_rows(published_rows(), filter(2, 2)).size() == 3);
  }

  TEST_CASE("the misprinted chi2 cell is annotated") {
    const auto checks = check_rows(published_rows(), filter(2, 2));
    const CellCheck& c = checks[1].cells[4];
    CHECK(c.status == CellStatus::Annotated);
    CHECK(c.expected == 0.0088);
    std::ostringstream out;
    write_reproduction_report(checks, out);
    CHECK(out.str().find("ANNOTATED") != std::string::npos);
  }

  TEST_CASE("a perturbed expected value fails the harness") {
    std::vector<PublishedRow> rows(published_rows().begin(), published_rows().begin() + 2);
    std::ostringstream ok;
    CHECK(write_reproduction_report(check_rows(rows, {}), ok));
    rows[1].ub2 = "0.0115";
    const auto checks = check_rows(rows, {});
    CHECK(checks[1].cells[2].status == CellStatus::Fail);
    std::ostringstream bad;
    CHECK_FALSE(write_reproduction_report(checks, bad));
  }

  TEST_CASE("tolerance override") {
    std::vector<PublishedRow> rows(published_rows().begin(), published_rows().begin() + 1);
    rows[0].p_fisher = "0.0570";
    CHECK_FALSE(check_rows(rows, {}).front().ok());
    CHECK(check_rows(rows, filter({}, {}, 2e-4)).front().ok());
  }
}

TEST_SUITE("rank") {
  std::vector<BatchRecord> records_for(const std::vector<ContingencyTable>& tables) {
    std::vector<InputRow> rows;
    for (std::size_t i = 0; i < tables.size(); ++i) {
      const auto& t = tables[i];
      rows.push_back({i + 2, "t" + std::to_string(1000 + i), t.n(), t.m_x(), t.m_a(), t.m_xa()});
    }
    std::vector<BatchRecord> out;
    for (auto& o : evaluate_rows_serial(rows, {})) {
      REQUIRE(o.record);
      out.push_back(std::move(*o.record));
    }
    return out;
  }

  TEST_CASE("single row agrees trivially") {
    const auto recs = records_for({build_table(1000, 500, 500, 263)});
    const auto r = rank_agreement(recs, 100);
    CHECK(r.top_k == 1);
    for (double v : r.top_overlap) CHECK(v == 1.0);
    CHECK(r.spearman[0][4] == 1.0);
  }

  TEST_CASE("identical orderings give perfect agreement") {
    std::vector<ContingencyTable> tables;
    for (Count m = 60; m <= 120; ++m) tables.push_back(build_table(1000, 200, 250, m));
    const auto r = rank_agreement(records_for(tables), 10);
    for (double v : r.top_overlap) CHECK(v == 1.0);
    CHECK(r.spearman[0][1] == doctest::Approx(1.0));
    std::ostringstream out;
    write_rank_agreement(r, out);
    CHECK(out.str().find("spearman") != std::string::npos);
  }

  TEST_CASE("ties break by id") {
    const auto recs = records_for({build_table(100, 20, 25, 10), build_table(100, 20, 25, 10)});
    const auto order = ordering(recs, Measure::Ub1);
    CHECK(order == std::vector<std::size_t>{0, 1});
  }

  TEST_CASE("requires exact values") {
    std::vector<InputRow> rows{{2, "a", 1000, 500, 500, 263}};
    BatchOptions opts;
    opts.include_exact = false;
    std::vector<BatchRecord> recs;
    for (auto& o : evaluate_rows_serial(rows, opts)) recs.push_back(std::move(*o.record));
    CHECK_THROWS_AS(rank_agreement(recs, 5), std::invalid_argument);
  }
}

TEST_SUITE("bench") {
  TEST_CASE("zero repetitions gives an empty report") {
    CHECK(run_bench(default_bench_configs(), 0).empty());
    std::ostringstream out;
    write_bench_report({}, out);
    CHECK(lines_of(out.str()).size() == 1);
  }

  TEST_CASE("default configurations span J over three decades") {
    const auto cfgs = default_bench_configs();
    REQUIRE(cfgs.size() == 4);
    CHECK(build_table(cfgs.front().n, cfgs.front().m_x, cfgs.front().m_a, cfgs.front().m_xa).j() == 200);
    const auto& big = cfgs.back();
    CHECK(big.m_x == 500000);
    CHECK(big.m_xa == 300000);
    CHECK(build_table(big.n, big.m_x, big.m_a, big.m_xa).j() + 1 == 200001);
  }

  TEST_CASE("judge_bench thresholds") {
    std::vector<BenchResult> rs(3);
    for (std::size_t i = 0; i < rs.size(); ++i) {
      rs[i].j = 100 * static_cast<Count>(i + 1) * 10;
      rs[i].exact_ns = 1000.0 * std::pow(10.0, static_cast<double>(i));
      rs[i].ub1_ns = rs[i].ub2_ns = rs[i].ub3_ns = 50.0;
    }
    CHECK(judge_bench(rs).ok());
    rs[2].ub2_ns = 101.0;
    CHECK_FALSE(judge_bench(rs).bounds_flat);
    rs[2].ub2_ns = 50.0;
    rs[2].exact_ns = rs[1].exact_ns * 1.2;
    CHECK_FALSE(judge_bench(rs).exact_grows);
  }

  TEST_CASE("a short run counts exact terms") {
    const auto rs = run_bench({{1000, 500, 500, 300}, {4000, 2000, 2000, 1200}}, 3);
    REQUIRE(rs.size() == 2);
    CHECK(rs[0].exact_terms == 201);
    CHECK(rs[1].exact_terms == 801);
    CHECK(rs[0].ub1_ns > 0.0);
  }
}
