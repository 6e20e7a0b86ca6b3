#pragma once

// Test corpora built from elementary models E^{phi/lambda} (x) R, optionally pushed
// forward from a ramified coordinate, then conjugated by random polynomial gauges.

#include "wildcycle/exponent.hpp"
#include "wildcycle/lambda_connection.hpp"

#include <map>
#include <random>
#include <string>
#include <vector>

namespace wctest {

using namespace wildcycle;

struct BlockSpec {
    ExpFactor phi{1};                 // in t_q, q = phi.q()
    std::vector<ComplexExponent> betas;
    bool jordan = false;              // chain equal consecutive exponents into one Jordan block
};

struct CorpusCase {
    std::string name;
    std::vector<BlockSpec> blocks;
    LambdaConnection model;  // block diagonal, before the gauge
    LambdaConnection input;  // gauged
    // reduced phi -> total rank, read from the construction
    std::map<std::string, int> expected_phis;
    int expected_q = 1;
    int zero_phi_rank = 0;
    bool regular() const { return zero_phi_rank == input.rank(); }
};

// constant matrix diag(beta*lambda) plus unit subdiagonal entries inside Jordan chains
ScalarMat regular_residue(const std::vector<ComplexExponent>& betas, bool jordan);
LambdaConnection elementary_block(const BlockSpec& b);

struct GaugeOptions {
    int degree = 2;            // polynomial degree in t of the random entries
    bool lambda_entries = false;
    int fill_percent = 50;
};

// G = P * L * U with P constant diagonal, L and U unipotent triangular; returns G and G^-1 exactly
std::pair<LaurentMatrix, LaurentMatrix> random_gauge(int n, std::mt19937& rng, const GaugeOptions& opt);
// exact frame change G^-1 (A G + lambda theta(G)) with a known inverse
LambdaConnection apply_gauge(const LambdaConnection& m, const LaurentMatrix& g, const LaurentMatrix& ginv);

CorpusCase make_case(const std::string& name, const std::vector<BlockSpec>& blocks, std::mt19937& rng, const GaugeOptions& opt);

// decomposition corpus: rank <= 5, mixes regular, twisted, ramified and Jordan blocks
std::vector<CorpusCase> decomposition_corpus();
// regularity corpus: at least 30 cases split between regular, twisted-regular and ramified-irregular
std::vector<CorpusCase> regularity_corpus();

ExpFactor phi1(std::map<int, Cyclotomic> c);               // q = 1
ExpFactor phiq(int q, std::map<int, Cyclotomic> c);

std::string phi_key(const ExpFactor& phi);

}  // namespace wctest
