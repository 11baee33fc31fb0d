#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hml/thetamat.hpp"

namespace hml {

// Per-j data of the transformation law of the theta components g_u.
struct SigmaContext {
    Mat2 sigma;
    i64 j = 0;
    i64 apcj = 0;   // a + c j
    i64 mu = 1;     // gcd(a + cj, D)
    i64 m = 1;      // mu-component of D
    i64 n = 1;      // D / m
    i64 f = 0;      // val_2(a + cj) when m != mu
    i64 kappa = 0;
    i64 lambda = 0;
};

SigmaContext sigma_context(const QuadField& F, const Mat2& sigma, i64 j);
// The same context with kappa replaced by another admissible value.
SigmaContext with_kappa(const SigmaContext& ctx, i64 kappa);

template <class S>
S R_factor_t(const QuadField& F, const SigmaContext& ctx, const DiffClass& v);
Cyclo R_factor(const QuadField& F, const SigmaContext& ctx, const DiffClass& v);

// A_u: the sum over j mod D, including the weight a_w/a_u.  kappa_shift adds
// kappa_shift * n * (m/mu) to every kappa (any admissible kappa must give the same value).
template <class S>
S inner_sum_direct_t(const QuadField& F, const Mat2& sigma, const DiffClass& w, const DiffClass& u, i64 kappa_shift = 0);
Cyclo inner_sum_direct(const QuadField& F, const Mat2& sigma, const DiffClass& w, const DiffClass& u);

// Closed evaluation for c | D, c > 0.
Cyclo inner_sum_closed(const QuadField& F, const Mat2& sigma, const DiffClass& w, const DiffClass& u);

// A = sum_u M_{u,v}(sigma) A_u / D.
Cyclo criterion_lhs(const QuadField& F, const Mat2& sigma, const DiffClass& v, const DiffClass& w);

struct VerifyOptions {
    std::uint64_t seed = 20240601;
    bool float_mode = false;   // also rerun every sigma with complex arithmetic
    int translates = 3;        // Gamma_0(D) translates per sigma
    int extras = 6;            // random sigma in Gamma_0(N) outside the sweep
    bool check_closed = true;  // compare closed inner sums on the c | D sweep
    unsigned threads = 0;      // 0: hardware concurrency
};

struct CriterionFailure {
    std::string kind;  // criterion, translate, closed, kappa, float
    Mat2 sigma;
    int v = 0;
    int w = 0;
    std::string lhs;
    std::string expected;
};

struct CriterionReport {
    i64 D = 0;
    i64 N = 1;
    std::uint64_t seed = 0;
    bool float_mode = false;
    i64 sigmas = 0;
    i64 triples_checked = 0;
    i64 translate_triples = 0;
    i64 closed_checked = 0;
    i64 kappa_checked = 0;
    i64 float_checked = 0;
    i64 extras_checked = 0;
    i64 extras_failed = 0;  // recorded only
    std::vector<CriterionFailure> failures;
    double wall_time = 0;
    bool passed() const { return failures.empty(); }
};

// Every sigma = [[a,b],[c,d]] with c | D, c > 0, d mod D coprime to c, plus the identity.
std::vector<Mat2> sweep_sigmas(i64 D);

CriterionReport verify_criterion(const QuadField& F, i64 N, const VerifyOptions& opt = {});

}  // namespace hml
