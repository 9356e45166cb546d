#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "ivest/csv.hpp"
#include "ivest/dataset.hpp"
#include "ivest/experiment.hpp"
#include "ivest/rng.hpp"
#include "test_support.hpp"

using namespace ivest;
namespace fs = std::filesystem;

namespace {

std::string dataset_text(const Dataset& data)
{
    std::ostringstream out;
    write_dataset_csv(out, data);
    return out.str();
}

Dataset parse(const std::string& text)
{
    std::istringstream in(text);
    return read_dataset_csv(in);
}

std::string read_file(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

std::string error_of(const std::string& text)
{
    try {
        parse(text);
    } catch (const CsvError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("generator streams are pinned")
{
    Rng a(5489);
    std::uint64_t last = 0;
    for (int k = 0; k < 10000; ++k) {
        last = a.next_u64();
    }
    CHECK(last == 9981545732273789042ull);

    Rng b(1);
    Rng c(1);
    double mean = 0.0;
    double sq = 0.0;
    const int count = 200000;
    for (int k = 0; k < count; ++k) {
        const double g = b.gaussian();
        CHECK(g == c.gaussian());
        mean += g;
        sq += g * g;
    }
    mean /= count;
    CHECK(std::abs(mean) < 0.01);
    CHECK(std::abs(sq / count - 1.0) < 0.02);

    Rng d(2);
    for (int k = 0; k < 1000; ++k) {
        const double u = d.uniform(-0.2, 0.2);
        CHECK(u >= -0.2);
        CHECK(u < 0.2);
    }
}

TEST_CASE("generate_lti")
{
    SimConfig sim;
    CHECK(sim.theta_true == (Vector(4) << -1.40, 0.75, 0.60, -0.10).finished());
    CHECK(sim.noise_half_width == 0.2);
    CHECK(sim.horizon == 200);

    const auto data = generate_lti(sim, 3);
    REQUIRE(data.records.size() == 200);
    CHECK(data.n == 4);
    CHECK(data.records[0].x == Vector::Zero(4));
    for (std::size_t k = 0; k < data.records.size(); ++k) {
        const auto& r = data.records[k];
        CHECK(r.t == k + 1);
        CHECK(r.v_lo == -0.2);
        CHECK(r.v_hi == 0.2);
        CHECK(r.v_true >= r.v_lo);
        CHECK(r.v_true <= r.v_hi);
        CHECK(r.y == doctest::Approx(r.x.dot(sim.theta_true) + r.v_true).epsilon(1e-14));
        if (k >= 1) {
            CHECK(r.x[0] == -data.records[k - 1].y);
        }
        if (k >= 2) {
            CHECK(r.x[1] == data.records[k - 1].x[0]);
            CHECK(r.x[3] == data.records[k - 1].x[2]);
        }
    }
    CHECK(dataset_text(data) == dataset_text(generate_lti(sim, 3)));
    CHECK(dataset_text(data) != dataset_text(generate_lti(sim, 4)));

    sim.noise_half_width = 0.0;
    for (const auto& r : generate_lti(sim, 3).records) {
        CHECK(r.v_true == 0.0);
    }

    sim.theta_true = (Vector(4) << -2.5, 0.0, 1.0, 0.0).finished();
    sim.horizon = 5000;
    try {
        generate_lti(sim, 1);
        FAIL("divergence not detected");
    } catch (const DivergenceError& e) {
        CHECK(e.t() > 1);
        CHECK(std::string(e.what()).find(std::to_string(e.t())) != std::string::npos);
    }
}

TEST_CASE("generate_ltv")
{
    auto sim = SimConfig::drifting();
    CHECK(sim.lambda == 0.1);
    const auto data = generate_ltv(sim, 9);
    CHECK(data.has_drift);
    Vector prev = sim.theta_true;
    for (const auto& r : data.records) {
        const Vector delta = r.theta_true - prev;
        const Vector expected = sim.drift_radius * std::sin(2 * std::numbers::pi * double(r.t) / 30.0);
        CHECK((delta - expected).cwiseAbs().maxCoeff() <= 1e-15);
        CHECK((delta.array() >= r.delta_lo.array()).all());
        CHECK((delta.array() <= r.delta_hi.array()).all());
        CHECK(r.delta_hi == sim.drift_radius);
        if (r.t == 15 || r.t == 30) {
            CHECK(delta.cwiseAbs().maxCoeff() <= 1e-15);
        }
        prev = r.theta_true;
    }

    sim.drift_radius = Vector::Zero(4);
    SimConfig constant;
    constant.lambda = sim.lambda;
    const auto still = generate_ltv(sim, 9);
    const auto lti = generate_lti(constant, 9);
    for (std::size_t k = 0; k < lti.records.size(); ++k) {
        CHECK(still.records[k].y == lti.records[k].y);
        CHECK(still.records[k].x == lti.records[k].x);
    }
}

TEST_CASE("SimConfig validation")
{
    SimConfig sim;
    sim.runs = 0;
    CHECK_THROWS_AS(sim.validate(), std::invalid_argument);
    sim = SimConfig();
    sim.prior_radius = 0.0;
    CHECK_THROWS_AS(sim.validate(), std::invalid_argument);
    sim = SimConfig();
    sim.noise_half_width = -1.0;
    CHECK_THROWS_AS(sim.validate(), std::invalid_argument);
    sim = SimConfig();
    sim.theta_true = Vector::Zero(3);
    CHECK_THROWS_AS(sim.validate(), std::invalid_argument);
}

TEST_CASE("dataset CSV round trip")
{
    for (const bool drift : {false, true}) {
        const auto data = drift ? generate_ltv(SimConfig::drifting(), 2) : generate_lti(SimConfig(), 2);
        const auto text = dataset_text(data);
        const auto back = parse(text);
        CHECK(back.has_drift == drift);
        CHECK(back.has_theta_true);
        CHECK(back.has_v_true);
        REQUIRE(back.records.size() == data.records.size());
        for (std::size_t k = 0; k < data.records.size(); ++k) {
            CHECK(back.records[k].y == data.records[k].y);
            CHECK(back.records[k].x == data.records[k].x);
            CHECK(back.records[k].theta_true == data.records[k].theta_true);
        }
        CHECK(dataset_text(back) == text);
    }
    const auto header = dataset_text(generate_ltv(SimConfig::drifting(), 2)).substr(0, 200);
    CHECK(header.rfind("t,y,x_1,x_2,x_3,x_4,v_lo,v_hi,v_true,theta_true_1,theta_true_2,theta_true_3,theta_true_4,"
                       "delta_lo_1,delta_lo_2,delta_lo_3,delta_lo_4,delta_hi_1",
                       0) == 0);
}

TEST_CASE("dataset CSV schema errors")
{
    CHECK(error_of("").find("header") != std::string::npos);
    CHECK(error_of("t,x_1,v_lo,v_hi\n1,0,0,0\n").find("'y'") != std::string::npos);
    CHECK(error_of("t,y,x_1,v_lo\n1,0,0,0\n").find("'v_hi'") != std::string::npos);
    CHECK(error_of("t,y,v_lo,v_hi\n1,0,0,0\n").find("'x_1'") != std::string::npos);
    CHECK(error_of("t,y,x_1,x_2,v_lo,v_hi,theta_true_1\n1,0,0,0,0,0,0\n").find("'theta_true_2'") !=
          std::string::npos);
    const auto inverted = error_of("t,y,x_1,v_lo,v_hi\n1,0,0,-1,1\n2,0,0,1,-1\n");
    CHECK(inverted.find("row 2") != std::string::npos);
    CHECK(inverted.find("v_lo > v_hi") != std::string::npos);
    CHECK(error_of("t,y,x_1,v_lo,v_hi\n1,abc,0,0,0\n").find("column 'y'") != std::string::npos);
    CHECK(error_of("t,y,x_1,v_lo,v_hi\n1,0,0,0\n").find("row 1") != std::string::npos);
}

TEST_CASE("estimates from a hand-written scalar file")
{
    // theta = 2, no noise, x = 1, 1, 2; P0 = 1, lambda = 1.
    const auto data = parse("t,y,x_1,v_lo,v_hi\n1,2,1,0,0\n2,2,1,0,0\n3,4,2,0,0\n");
    LtiEstimatorConfig config;
    config.rls = RlsConfig::isotropic(Vector::Zero(1), 1.0, 1.0);
    config.theta_prior = IntervalVector::from_center_radius(Vector::Zero(1), Vector::Constant(1, 4.0));
    const auto est = estimate_dataset(data, config);
    REQUIRE(est.size() == 3);
    // P: 1 -> 1/2 -> 1/3 -> 1/7; theta: 1 -> 4/3 -> 12/7.
    CHECK(est[0].point[0] == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(est[1].point[0] == doctest::Approx(4.0 / 3.0).epsilon(1e-15));
    CHECK(est[2].point[0] == doctest::Approx(12.0 / 7.0).epsilon(1e-15));
    // A = 1/2, 2/3, 3/7: radius 4 * (1/2)(2/3)(3/7) = 4/7.
    CHECK(est[2].raw.radius()[0] == doctest::Approx(4.0 / 7.0).epsilon(1e-15));
}

TEST_CASE("estimating from CSV matches the in-memory pipeline")
{
    SimConfig sim;
    sim.monotonic = true;
    const auto data = generate_lti(sim, 12);
    const auto back = parse(dataset_text(data));
    for (const auto& mode : sim.modes) {
        const auto config = estimator_config(sim, mode);
        const auto a = estimate_dataset(data, config);
        const auto b = estimate_dataset(back, config);
        for (std::size_t t = 0; t < a.size(); ++t) {
            CHECK(a[t].raw == b[t].raw);
            CHECK(*a[t].refined == *b[t].refined);
        }
    }

    std::vector<EstimateRow> rows;
    for (const auto& e : estimate_dataset(data, estimator_config(sim, RadiusMode::exact()))) {
        rows.push_back(EstimateRow::from(e));
    }
    std::ostringstream out;
    write_estimates_csv(out, rows);
    const auto text = out.str();
    CHECK(text.rfind("t,theta_hat_1,theta_hat_2,theta_hat_3,theta_hat_4,c_1,c_2,c_3,c_4,r_1,r_2,r_3,r_4,lo_1,lo_2,"
                     "lo_3,lo_4,hi_1,hi_2,hi_3,hi_4,mono_lo_1,mono_lo_2,mono_lo_3,mono_lo_4,mono_hi_1,mono_hi_2,"
                     "mono_hi_3,mono_hi_4,inconsistent\n",
                     0) == 0);
}

TEST_CASE("experiment runner")
{
    SimConfig sim;
    sim.runs = 6;
    sim.monotonic = true;
    const auto result = run_experiment(sim);
    CHECK(result.all_ok());
    CHECK(result.audits.size() == 6 * sim.modes.size());
    REQUIRE(result.tracks.size() == 3);
    CHECK(result.tracks[0].mean_rows.size() == 200);

    SimConfig quiet;
    quiet.runs = 1;
    quiet.noise_half_width = 0.0;
    quiet.horizon = 1000;
    quiet.modes = {RadiusMode::exact()};
    const auto clean = run_experiment(quiet);
    const auto& rows = clean.tracks[0].mean_rows;
    CHECK(rows[999].radius.maxCoeff() < 1e-3 * rows[20].radius.maxCoeff());
    CHECK(rows[999].radius.maxCoeff() < 1e-6);

    SimConfig broken = sim;
    broken.theta_true = (Vector(4) << -2.5, 0.0, 1.0, 0.0).finished();
    broken.horizon = 3000;
    try {
        run_experiment(broken);
        FAIL("expected a divergence");
    } catch (const std::exception& e) {
        CHECK(std::string(e.what()).find("run 0") != std::string::npos);
    }
}

TEST_CASE("parallel execution is byte-identical")
{
    SimConfig sim;
    sim.runs = 12;
    sim.monotonic = true;
    const auto base = fs::temp_directory_path() / "ivest_determinism";
    fs::remove_all(base);
    sim.threads = 1;
    write_experiment(run_experiment(sim), base / "serial");
    sim.threads = 4;
    write_experiment(run_experiment(sim), base / "parallel");
    for (const auto& entry : fs::directory_iterator(base / "serial")) {
        const auto name = entry.path().filename();
        CHECK(read_file(entry.path()) == read_file(base / "parallel" / name));
    }
    fs::remove_all(base);
}

TEST_CASE("lambda sweep")
{
    SimConfig sim;
    sim.runs = 5;
    const auto rows = lambda_sweep(sim, {0.6});
    REQUIRE(rows.size() == sim.modes.size());
    sim.lambda = 0.6;
    sim.monotonic = true;
    const auto direct = run_experiment(sim);
    for (std::size_t k = 0; k < rows.size(); ++k) {
        CHECK(rows[k].mode == direct.tracks[k].mode);
        CHECK(rows[k].mean_final_width == direct.tracks[k].mean_final_width);
        CHECK(rows[k].all_ok);
    }
    CHECK_THROWS_AS(lambda_sweep(sim, {1.0}), std::invalid_argument);
    CHECK_THROWS_AS(lambda_sweep(sim, {0.0}), std::invalid_argument);
    CHECK(sweep_csv(rows).rfind("lambda,mode,width_1", 0) == 0);
}
