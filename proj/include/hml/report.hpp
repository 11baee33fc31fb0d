#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "hml/criterion.hpp"
#include "hml/hecke.hpp"
#include "hml/ikeda.hpp"
#include "hml/lift.hpp"
#include "json.hpp"

namespace hml {

using json = nlohmann::json;

json cyclo_json(const Cyclo& c);
// Inverse of cyclo_json's exact part: {order, terms: [[k, num, den], ...]}.
Cyclo cyclo_from_json(const json& j);
json rational_json(const Rational& r);  // "p/q" string

json criterion_json(const CriterionReport& r);
json theta_matrix_json(const ThetaMatrix& M);

// Every T != 0, T >= 0 with D l m <= bound, with c_F(T) from alpha.
json maass_table_json(const QuadField& F, i64 N, int k, const AlphaSeries& alpha, i64 bound);

json reps_json(const QuadField& F, i64 p, i64 N);

json eigen_json(const EigenData& ed);
// Accepts ap entries with an exact form {order, terms} or Gaussian integers {re, im}.
EigenData eigen_from_json(const QuadField& F, const json& j);

// {"weight", "coeffs": [int | "p/q" | null, ...]} or {"eisenstein_star": k}.
QExpansion qexp_from_json(const QuadField& F, const json& j, i64 upto);

Mat2 random_sl2(std::mt19937_64& rng, int length);

struct RunOptions {
    std::uint64_t seed = 20240601;
    bool float_mode = false;
    int k = 8;
    unsigned threads = 0;
};

// The check modes of a verification campaign; every result carries "passed".
const std::vector<std::string>& check_modes();
json run_check(const QuadField& F, i64 N, const std::string& mode, const RunOptions& opt);

}  // namespace hml
