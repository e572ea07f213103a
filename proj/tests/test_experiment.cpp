// SPDX-License-Identifier: Apache-2.0
#include "support.hpp"

#include <adsim/manifest.hpp>

#include <fstream>
#include <set>
#include <sstream>

using namespace adsim;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

SweepSpec quiet_spec(SweptParam swept, SweepRange range, Environment env = Environment::Urban)
{
    SweepSpec s;
    s.swept = swept;
    s.range = range;
    s.scenario = env;
    s.fixed.sigma_urban_db = 0.0;
    s.fixed.sigma_rural_db = 0.0;
    s.fixed.attempts = 200;
    return s;
}

std::string slurp(const std::filesystem::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("parallel_map keeps index order and propagates errors")
{
    const auto v = parallel_map<std::size_t>(1000, 8, [](std::size_t i) { return i * i; });
    for (std::size_t i = 0; i < v.size(); ++i)
        CHECK(v[i] == i * i);
    CHECK_THROWS_AS(parallel_map<int>(10, 4,
                                      [](std::size_t i) -> int {
                                          if (i == 7)
                                              throw InvalidInput("boom");
                                          return 0;
                                      }),
                    InvalidInput);
}

TEST_CASE("sweep points and range validation")
{
    CHECK(sweep_points({10.0, 250.0, 5.0}).size() == 49);
    CHECK(sweep_points({2.0, 100.0, 1.0}).size() == 99);
    CHECK(sweep_points({0.05, 1.0, 0.05}).size() == 20);
    CHECK_THROWS_AS(sweep_points({10.0, 250.0, 0.0}), InvalidInput);
    CHECK_THROWS_AS(sweep_points({250.0, 10.0, 5.0}), InvalidInput);

    auto s = quiet_spec(SweptParam::Distance, {0.1, 250.0, 5.0});
    CHECK_THROWS_AS(run_sweep(s), InvalidInput);
    s = quiet_spec(SweptParam::Frequency, {0.0, 10.0, 1.0});
    CHECK_THROWS_AS(run_sweep(s), InvalidInput);
}

TEST_CASE("distance sweep: secrecy non-increasing without shadowing")
{
    for (Environment env : {Environment::Urban, Environment::Rural}) {
        const auto s = quiet_spec(SweptParam::Distance, {10.0, 250.0, 5.0}, env);
        const auto rows = run_sweep(s);
        REQUIRE(rows.size() == 49);
        for (std::size_t i = 1; i < rows.size(); ++i) {
            CHECK(rows[i].c_secrecy_bps <= rows[i - 1].c_secrecy_bps);
            CHECK(rows[i].c_secrecy_nodust_bps <= rows[i - 1].c_secrecy_nodust_bps);
        }
        for (const auto& r : rows)
            CHECK(r.c_valid_bps < r.c_valid_nodust_bps);
    }
}

TEST_CASE("frequency sweep: complexity follows secrecy")
{
    const auto s = quiet_spec(SweptParam::Frequency, {2.0, 100.0, 1.0});
    const auto rows = run_sweep(s);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        if (rows[i].c_secrecy_bps <= rows[i - 1].c_secrecy_bps) {
            CHECK(rows[i].hd.complexity <= rows[i - 1].hd.complexity);
            CHECK(rows[i].fd.complexity <= rows[i - 1].fd.complexity);
        }
        CHECK(rows[i].fd.complexity == 2.0 * rows[i].hd.complexity);
    }
}

TEST_CASE("sweep is identical across runs and worker counts")
{
    auto s = quiet_spec(SweptParam::Visibility, {0.05, 1.0, 0.05});
    s.fixed.sigma_urban_db = 8.0;
    const auto a = to_csv(sweep_table(s, run_sweep(s, 1)));
    const auto b = to_csv(sweep_table(s, run_sweep(s, 1)));
    const auto c = to_csv(sweep_table(s, run_sweep(s, 6)));
    CHECK(a == b);
    CHECK(a == c);
    s.seed = 2;
    CHECK(to_csv(sweep_table(s, run_sweep(s, 1))) != a);
}

TEST_CASE("sweep table columns")
{
    auto s = quiet_spec(SweptParam::Distance, {10.0, 20.0, 5.0});
    auto t = sweep_table(s, run_sweep(s));
    CHECK(t.columns.front() == "distance_m");
    CHECK(t.column_index("c_secrecy_bps"));
    CHECK(t.column_index("c_secrecy_nodust_bps"));
    CHECK(t.column_index("miss_rate_hd"));
    CHECK(t.column_index("p_miss_fd"));
    s.dust_enabled = false;
    s.attack_mode = ModeSelection::HD;
    t = sweep_table(s, run_sweep(s));
    CHECK_FALSE(t.column_index("c_secrecy_nodust_bps"));
    CHECK_FALSE(t.column_index("miss_rate_fd"));
    CHECK(sweep_stem(s) == "distance_urban");
}

TEST_CASE("sensitivity experiment")
{
    SweepSpec s;
    const auto a = run_sensitivity_experiment(14, s);
    const auto b = run_sensitivity_experiment(14, s);
    REQUIRE(a.size() == 14);
    CHECK(to_csv(sensitivity_table(a)) == to_csv(sensitivity_table(b)));
    const double f = fraction_hd_dominates(a);
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
    CHECK_THROWS_AS(run_sensitivity_experiment(0, s), InvalidInput);
}

TEST_CASE("rank correlation")
{
    CHECK_THAT(rank_correlation({1, 2, 3, 4}, {10, 20, 30, 40}), WithinAbs(1.0, 1e-12));
    CHECK_THAT(rank_correlation({1, 2, 3, 4}, {4, 3, 2, 1}), WithinAbs(-1.0, 1e-12));
    CHECK(std::isnan(rank_correlation({1}, {1})));
}

TEST_CASE("miss-count distributions")
{
    const auto d = run_missrate_experiment(50, 0.3, 0.3, 0.3, 100000, 42, 4);
    CHECK(argmax(d.pmf_hd) == 15);
    CHECK(total_variation(d.mc_hd, d.pmf_hd) < 0.02);
    CHECK(total_variation(d.mc_fd, d.pmf_fd) < 0.02);
    // FD first-order stochastically dominates HD.
    double cdf_hd = 0.0, cdf_fd = 0.0;
    for (std::size_t k = 0; k <= 50; ++k) {
        cdf_hd += d.pmf_hd[k];
        cdf_fd += d.pmf_fd[k];
        CHECK(cdf_fd <= cdf_hd + 1e-12);
    }
    const auto again = run_missrate_experiment(50, 0.3, 0.3, 0.3, 2000, 42, 1);
    const auto four = run_missrate_experiment(50, 0.3, 0.3, 0.3, 2000, 42, 4);
    CHECK(to_csv(missrate_table(again)) == to_csv(missrate_table(four)));
    CHECK_THROWS_AS(run_missrate_experiment(0, 0.3, 0.3, 0.3, 10, 1), InvalidInput);
}

TEST_CASE("CSV emission")
{
    const auto dir = testing::scratch_dir("csv");
    Table t;
    t.columns = {"name", "c_secrecy_bps", "n"};
    emit_csv(t, dir / "empty.csv");
    CHECK(slurp(dir / "empty.csv") == "name,c_secrecy_bps,n\n");

    t.rows.push_back({std::string("a,\"b\""), 0.1, std::int64_t{3}});
    t.rows.push_back({std::string("plain"), 1.0 / 3.0, std::int64_t{-1}});
    emit_csv(t, dir / "a.csv");
    emit_csv(t, dir / "b.csv");
    CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
    CHECK(slurp(dir / "a.csv") ==
          "name,c_secrecy_bps,n\n\"a,\"\"b\"\"\",0.10000000000000001,3\nplain,0.33333333333333331,-1\n");
    CHECK_THROWS_AS(emit_csv(t, dir / "missing" / "x.csv"), IoError);
}

TEST_CASE("format_number round trips")
{
    testing::Gen g(501);
    for (int i = 0; i < 1000; ++i) {
        const double v = g.log_uniform(1e-300, 1e300) * (g.index(0, 1) ? 1 : -1);
        CHECK(std::stod(format_number(v)) == v);
        CHECK(std::stod(format_shortest(v)) == v);
    }
    CHECK(format_number(std::nan("")) == "nan");
}

TEST_CASE("plot data files")
{
    const auto dir = testing::scratch_dir("plot");
    auto s = quiet_spec(SweptParam::Distance, {10.0, 30.0, 10.0});
    const auto t = sweep_table(s, run_sweep(s));
    const auto files = emit_plot_data(t, "distance_m", dir, sweep_stem(s));
    CHECK(files.size() == t.columns.size() - 1);
    std::set<std::string> names;
    for (const auto& f : files)
        names.insert(f.filename().string());
    CHECK(names.contains("distance_urban_c_secrecy_bps.dat"));
    CHECK(names.contains("distance_urban_c_secrecy_nodust_bps.dat"));
    const auto body = slurp(dir / "distance_urban_c_valid_bps.dat");
    CHECK(body.rfind("# distance_m c_valid_bps\n10 ", 0) == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') == 4);
}

TEST_CASE("config text round trip and errors")
{
    ConfigFile c;
    c.spec.fixed.radio.frequency_ghz = 60.0;
    c.spec.fixed.dust_span_km = 0.1;
    c.spec.seed = 77;
    c.both_scenarios = true;
    const auto text = to_config_text(c);
    CHECK(to_config_text(parse_config_text(text)) == text);
    CHECK(text.find("frequency_ghz=60\n") != std::string::npos);
    CHECK(text.find("eavesdropper_distance_m=edge\n") != std::string::npos);

    const auto d = parse_config_text("# comment\n swept = frequency \nvisibility_km=0.25 # trailing\n");
    CHECK(d.spec.swept == SweptParam::Frequency);
    CHECK(d.spec.fixed.dust.visibility_km == 0.25);

    CHECK_THROWS_AS(parse_config_text("nonsense=1\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_text("seed=abc\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_text("no equals sign\n"), InvalidInput);
    CHECK_THROWS_AS(parse_config_text("scenario=desert\n"), InvalidInput);
}

TEST_CASE("manifest is replayable")
{
    const auto dir = testing::scratch_dir("manifest");
    detail::write_file(dir / "abc.txt", "abc");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    ConfigFile c;
    c.spec.seed = 9;
    const auto m = make_manifest("sweep", c, {dir / "abc.txt"});
    const auto text = to_text(m);
    CHECK(text.find("ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad") != std::string::npos);
    CHECK(to_config_text(parse_config_text(text)) == to_config_text(c));
}
