#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "xmaint/debt_models.hpp"
#include "xmaint/error.hpp"

using namespace xmaint;

namespace {

std::vector<Violation> efforts(std::initializer_list<double> minutes)
{
    std::vector<Violation> out;
    for (double m : minutes) {
        Violation v;
        v.effort_minutes = m;
        out.push_back(v);
    }
    return out;
}

ErrorCode code_of(auto&& fn)
{
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::io_error;
}

} // namespace

TEST(Mi, NeutralInputsGiveHundred)
{
    EXPECT_EQ(maintainability_index(1, 0, 1).mi, 100.0);
}

TEST(Mi, HandEvaluatedExample)
{
    const double expected =
        100.0 * (171 - 5.2 * std::log(100.0) - 0.23 * 5 - 16.2 * std::log(50.0)) / 171;
    const auto r = maintainability_index(100, 5, 50);
    EXPECT_NEAR(r.mi, 48.26, 0.01);
    EXPECT_DOUBLE_EQ(r.mi, expected);
}

TEST(Mi, ClampedAtZero)
{
    EXPECT_EQ(maintainability_index(1e6, 200, 1e4).mi, 0.0);
}

TEST(Mi, StaysInRange)
{
    std::mt19937 rng(1);
    std::uniform_real_distribution<double> d(0, 1e5);
    for (int i = 0; i < 1000; ++i) {
        const auto r = maintainability_index(d(rng), d(rng) / 100, d(rng));
        EXPECT_GE(r.mi, 0.0);
        EXPECT_LE(r.mi, 100.0);
    }
}

TEST(Mi, ProjectWithoutUnitsThrowsMissingUnits)
{
    ProjectMetrics p;
    p.total_loc = 10;
    EXPECT_EQ(code_of([&] { (void)maintainability_index(p); }), ErrorCode::missing_units);
}

TEST(Tdr, ProductionEffort)
{
    EXPECT_DOUBLE_EQ(production_effort(0, 30), 0);
    EXPECT_DOUBLE_EQ(production_effort(1000, 30), 30000);
    EXPECT_DOUBLE_EQ(production_effort(1000, 20), 20000);
}

TEST(Tdr, NoViolationsIsGradeA)
{
    const auto r = technical_debt_ratio({}, 30000);
    EXPECT_DOUBLE_EQ(r.tdr, 0);
    EXPECT_EQ(r.grade, Grade::A);
}

TEST(Tdr, GradeB)
{
    const auto r = technical_debt_ratio(efforts({2000, 100}), 30000);
    EXPECT_DOUBLE_EQ(r.remediation_minutes, 2100);
    EXPECT_NEAR(r.tdr, 0.07, 1e-12);
    EXPECT_EQ(r.grade, Grade::B);
}

TEST(Tdr, AboveOneIsGradeE)
{
    const auto r = technical_debt_ratio(efforts({45000}), 30000);
    EXPECT_DOUBLE_EQ(r.tdr, 1.5);
    EXPECT_EQ(r.grade, Grade::E);
}

TEST(Tdr, ZeroProductionEffortRejected)
{
    EXPECT_EQ(code_of([] { (void)technical_debt_ratio({}, 0); }), ErrorCode::zero_production_effort);
}

TEST(Tdr, ScaleInvariance)
{
    const auto base = technical_debt_ratio(efforts({120, 30, 45}), 9000);
    for (double k : {0.5, 3.0, 1000.0}) {
        const auto scaled = technical_debt_ratio(efforts({120 * k, 30 * k, 45 * k}), 9000 * k);
        EXPECT_NEAR(scaled.tdr, base.tdr, 1e-12);
        EXPECT_EQ(scaled.grade, base.grade);
    }
}

TEST(Tdr, LinearInRemediation)
{
    const auto one = technical_debt_ratio(efforts({100}), 10000);
    const auto two = technical_debt_ratio(efforts({100, 100}), 10000);
    EXPECT_NEAR(two.tdr, 2 * one.tdr, 1e-15);
}

TEST(Tdr, SameEstimatorRequired)
{
    const std::vector<double> same{30, 30, 30};
    EXPECT_NO_THROW(require_same_estimator(same));
    const std::vector<double> mixed{30, 20};
    EXPECT_EQ(code_of([&] { require_same_estimator(mixed); }), ErrorCode::estimator_mismatch);
}

TEST(Grade, Boundaries)
{
    EXPECT_EQ(tdr_grade(0), Grade::A);
    EXPECT_EQ(tdr_grade(0.05), Grade::A);
    EXPECT_EQ(tdr_grade(0.050001), Grade::B);
    EXPECT_EQ(tdr_grade(0.10), Grade::B);
    EXPECT_EQ(tdr_grade(0.20), Grade::C);
    EXPECT_EQ(tdr_grade(0.50), Grade::D);
    EXPECT_EQ(tdr_grade(0.51), Grade::E);
    EXPECT_EQ(tdr_grade(7.0), Grade::E);
    EXPECT_EQ(code_of([] { (void)tdr_grade(-0.01); }), ErrorCode::negative_tdr);
    EXPECT_EQ(to_char(Grade::C), 'C');
}

TEST(Grade, MonotoneInTdr)
{
    Grade previous = Grade::A;
    for (int i = 0; i <= 1200; ++i) {
        const auto g = tdr_grade(i / 1000.0);
        EXPECT_GE(static_cast<int>(g), static_cast<int>(previous));
        previous = g;
    }
}

TEST(Sig, SingleLowUnit)
{
    const std::vector<RiskSample> s{{3, 10}};
    const auto p = sig_risk_profile(s, RiskBands{});
    EXPECT_DOUBLE_EQ(p.low, 1.0);
    EXPECT_DOUBLE_EQ(p.moderate + p.high + p.very_high, 0.0);
}

TEST(Sig, TwoBandsByLoc)
{
    const std::vector<RiskSample> s{{5, 50}, {25, 50}};
    const auto p = sig_risk_profile(s, RiskBands{10, 20, 50});
    EXPECT_DOUBLE_EQ(p.low, 0.5);
    EXPECT_DOUBLE_EQ(p.high, 0.5);
    EXPECT_DOUBLE_EQ(p.moderate, 0.0);
}

TEST(Sig, ClosedUpperBounds)
{
    const std::vector<RiskSample> s{{10, 1}, {20, 1}, {50, 1}, {51, 1}};
    const auto p = sig_risk_profile(s, RiskBands{10, 20, 50});
    EXPECT_DOUBLE_EQ(p.low, 0.25);
    EXPECT_DOUBLE_EQ(p.moderate, 0.25);
    EXPECT_DOUBLE_EQ(p.high, 0.25);
    EXPECT_DOUBLE_EQ(p.very_high, 0.25);
}

TEST(Sig, RiskProfileErrors)
{
    EXPECT_EQ(code_of([] { (void)sig_risk_profile(std::span<const RiskSample>{}, RiskBands{}); }), ErrorCode::no_units);
    const std::vector<RiskSample> s{{1, 1}};
    EXPECT_EQ(code_of([&] { (void)sig_risk_profile(s, RiskBands{20, 10, 50}); }), ErrorCode::invalid_config);
}

TEST(Sig, UnitSizeUsesVerbosity)
{
    UnitMetrics u;
    u.profile_id = "cobol-like";
    u.loc = 100;
    const std::vector<UnitMetrics> units{u};
    const auto scaled = sig_risk_profile(units, SigMetric::loc, RiskBands{30, 60, 120}, {{"cobol-like", 2.0}});
    EXPECT_DOUBLE_EQ(scaled.moderate, 1.0);
    const auto raw = sig_risk_profile(units, SigMetric::loc, RiskBands{30, 60, 120});
    EXPECT_DOUBLE_EQ(raw.high, 1.0);
}

TEST(Sig, PerfectProfileRatesFive)
{
    EXPECT_EQ(sig_rate_risk(RiskProfile{1, 0, 0, 0}, default_risk_rating_table()), 5);
    EXPECT_EQ(sig_rate_risk(RiskProfile{0, 0, 0, 1}, default_risk_rating_table()), 1);
}

TEST(Sig, RiskRatingIsMonotone)
{
    const auto table = default_risk_rating_table();
    int previous = 5;
    for (int i = 0; i <= 100; ++i) {
        const double bad = i / 100.0;
        const int r = sig_rate_risk(RiskProfile{1 - bad, bad / 2, bad / 4, bad / 4}, table);
        EXPECT_LE(r, previous);
        previous = r;
    }
}

TEST(Sig, DuplicationLadder)
{
    const SigConfig cfg;
    EXPECT_EQ(sig_rate_scalar(0.03, cfg.duplication), 5);
    EXPECT_EQ(sig_rate_scalar(0.04, cfg.duplication), 4);
    EXPECT_EQ(sig_rate_scalar(0.10, cfg.duplication), 3);
    EXPECT_EQ(sig_rate_scalar(0.15, cfg.duplication), 2);
    EXPECT_EQ(sig_rate_scalar(0.50, cfg.duplication), 1);
    EXPECT_EQ(sig_rate_scalar(0.96, cfg.unit_testing), 5);
    EXPECT_EQ(sig_rate_scalar(0.10, cfg.unit_testing), 1);
}

TEST(Sig, ConstantRatings)
{
    PropertyRatings r{{SigProperty::volume, 3}, {SigProperty::complexity, 3}, {SigProperty::duplication, 3},
                      {SigProperty::unit_size, 3}, {SigProperty::unit_testing, 3}};
    const auto s = sig_characteristics(r, default_sig_matrix());
    ASSERT_EQ(s.characteristics.size(), 4u);
    for (const auto& [c, v] : s.characteristics) EXPECT_DOUBLE_EQ(v, 3.0);
    EXPECT_DOUBLE_EQ(*s.overall, 3.0);
}

TEST(Sig, CharacteristicsWithoutCoverage)
{
    PropertyRatings r{{SigProperty::volume, 4}, {SigProperty::duplication, 2}, {SigProperty::unit_size, 4},
                      {SigProperty::complexity, 2}};
    const auto s = sig_characteristics(r, default_sig_matrix());
    EXPECT_NEAR(s.characteristics.at(SigCharacteristic::analysability), 3.33, 0.005);
    EXPECT_DOUBLE_EQ(s.characteristics.at(SigCharacteristic::changeability), 2.0);
    EXPECT_FALSE(s.characteristics.count(SigCharacteristic::stability));
    EXPECT_DOUBLE_EQ(s.characteristics.at(SigCharacteristic::testability), 3.0);
    EXPECT_NEAR(*s.overall, 2.78, 0.005);
}

TEST(Sig, OnlyCoverage)
{
    PropertyRatings r{{SigProperty::unit_testing, 4}};
    const auto s = sig_characteristics(r, default_sig_matrix());
    EXPECT_DOUBLE_EQ(s.characteristics.at(SigCharacteristic::stability), 4.0);
    EXPECT_EQ(s.characteristics.size(), 3u);
    EXPECT_DOUBLE_EQ(*s.overall, 4.0);
}

TEST(Sig, AssessWithoutCoverageLeavesTestingAbsent)
{
    UnitMetrics u;
    u.profile_id = "c-family";
    u.cc = 3;
    u.loc = 10;
    const std::vector<UnitMetrics> units{u};
    const auto s = sig_assess(units, 10, 0.0, std::nullopt, {}, SigConfig{});
    EXPECT_FALSE(s.properties.count(SigProperty::unit_testing));
    EXPECT_EQ(s.properties.at(SigProperty::volume), 5);
    EXPECT_EQ(s.properties.at(SigProperty::duplication), 5);
    const auto with = sig_assess(units, 10, 0.0, 0.9, {}, SigConfig{});
    EXPECT_EQ(with.properties.at(SigProperty::unit_testing), 4);
}
