#include "doctest.h"
#include "hml/criterion.hpp"

using namespace hml;

namespace {

Cyclo delta(const DiffClass& v, const DiffClass& w) { return Cyclo::rational(v.dnorm == w.dnorm ? 1 : 0); }

// The criterion sum with an additional 1/a_u on every term.
Cyclo lhs_extra_normalization(const QuadField& F, const Mat2& s, const DiffClass& v, const DiffClass& w) {
    const ThetaMatrix M = theta_matrix(F, s);
    Cyclo acc;
    for (const DiffClass& u : classes(F)) acc += (M.at(u.index, v.index) * inner_sum_direct(F, s, w, u)).scaled(1, u.mult);
    return acc.scaled(1, F.D);
}

}  // namespace

TEST_CASE("sweep sigmas have determinant one and c | D") {
    for (i64 D : {3, 8, 24}) {
        const auto sig = sweep_sigmas(D);
        CHECK(sig.front() == Mat2{1, 0, 0, 1});
        for (const Mat2& s : sig) {
            CHECK(s.det() == 1);
            if (s.c != 0) CHECK(D % s.c == 0);
        }
    }
}

TEST_CASE("criterion holds at D = 3 and D = 4") {
    for (i64 D : {3, 4}) {
        const QuadField F = make_field(D);
        for (const Mat2& s : sweep_sigmas(D))
            for (const DiffClass& v : classes(F))
                for (const DiffClass& w : classes(F)) CHECK(criterion_lhs(F, s, v, w) == delta(v, w));
    }
}

TEST_CASE("verify_criterion passes with a nontrivial level") {
    VerifyOptions opt;
    opt.float_mode = true;
    const CriterionReport r = verify_criterion(make_field(7), 3, opt);
    CHECK(r.passed());
    CHECK(r.triples_checked > 0);
    CHECK(r.float_checked > 0);
    CHECK(r.translate_triples > 0);
}

TEST_CASE("closed inner sums agree with the defining sums in both parities") {
    for (i64 D : {7, 8, 20, 24}) {
        const QuadField F = make_field(D);
        const auto cls = classes(F);
        for (const Mat2& s : sweep_sigmas(D)) {
            if (s.c <= 0) continue;
            for (const DiffClass& u : cls)
                for (const DiffClass& w : cls) CHECK(inner_sum_closed(F, s, w, u) == inner_sum_direct(F, s, w, u));
        }
    }
}

TEST_CASE("inner sums do not depend on the admissible kappa") {
    const QuadField F = make_field(24);
    const auto cls = classes(F);
    for (const Mat2& s : sweep_sigmas(24))
        for (const DiffClass& u : cls)
            for (const DiffClass& w : cls)
                CHECK(inner_sum_direct_t<Cyclo>(F, s, w, u, 1) == inner_sum_direct(F, s, w, u));
}

TEST_CASE("an extra 1/a_u normalization breaks the criterion") {
    const QuadField F = make_field(4);
    bool broken = false;
    for (const Mat2& s : sweep_sigmas(4))
        for (const DiffClass& v : classes(F))
            for (const DiffClass& w : classes(F)) {
                REQUIRE(criterion_lhs(F, s, v, w) == delta(v, w));
                if (lhs_extra_normalization(F, s, v, w) != delta(v, w)) broken = true;
            }
    CHECK(broken);
}

TEST_CASE("sigma outside SL2 is rejected by the closed form") {
    const QuadField F = make_field(3);
    const auto cls = classes(F);
    CHECK_THROWS_AS(inner_sum_closed(F, {2, 0, 3, 1}, cls[0], cls[0]), std::invalid_argument);
    CHECK_THROWS_AS(inner_sum_closed(F, {1, 0, 2, 1}, cls[0], cls[0]), std::invalid_argument);
}
