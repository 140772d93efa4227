#pragma once

#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "hofer/common.hpp"

namespace hofer {

// Basis conventions for H_1 of a finite-type surface:
//  - Genus0Punctures: k small positive circles around the punctures of a disk.
//  - Torus: the two meridians (alpha, beta).
//  - PuncturedTorus: k vertical meridians alpha_1..alpha_k plus the horizontal
//    meridian beta (coefficients stored as m_1..m_k, n).
//  - GenusSum: concatenation of punctured-torus blocks, one per handle.
enum class H1Basis {
    Genus0Punctures,
    Torus,
    PuncturedTorus,
    GenusSum,
};

struct H1Class {
    H1Basis basis = H1Basis::Genus0Punctures;
    std::vector<long long> coeffs;
    // For GenusSum: number of coefficients per block (each block is a
    // punctured-torus basis, k_i meridians + 1).
    std::vector<int> block_sizes;

    bool is_zero() const {
        for (long long c : coeffs)
            if (c != 0) return false;
        return true;
    }
    std::size_t rank() const { return coeffs.size(); }

    bool operator==(const H1Class& o) const {
        return basis == o.basis && coeffs == o.coeffs && block_sizes == o.block_sizes;
    }
};

H1Class make_genus0_class(std::vector<long long> coeffs);
H1Class make_torus_class(long long n, long long m);
H1Class make_punctured_torus_class(std::vector<long long> meridians, long long beta);
H1Class make_genus_sum_class(std::vector<H1Class> blocks);

H1Class add(const H1Class& a, const H1Class& b);
H1Class scale(const H1Class& a, long long n);

// Word length of a genus-zero class with respect to the generating set of
// simple-loop classes. A simple loop in a punctured disk encloses a subset J
// of the punctures, so its class is +/- sum_{j in J} gamma_j (a signed
// indicator vector); the minimum number of such vectors summing to alpha is
// max(0, max_j alpha_j) + max(0, max_j -alpha_j).
long long word_length_genus0(const H1Class& alpha);

// Independent oracle: breadth-first search over sums of signed indicator
// vectors. Exponential in k; intended for small boxes only.
long long word_length_genus0_bfs(const H1Class& alpha);

// Level-set decomposition of a genus-zero class into word_length signed
// indicator loops: positive loops around {j : alpha_j >= r}, r = 1..max+,
// negative loops around {j : alpha_j <= -r}. Returned as (sign, subset) pairs.
std::vector<std::pair<int, std::vector<int>>> simple_loop_decomposition_genus0(const H1Class& alpha);

// n*alpha + m*beta = ((n-1)*alpha + beta) + (alpha + (m-1)*beta),
// both summands primitive, hence representable by simple loops.
std::pair<H1Class, H1Class> decompose_torus(long long n, long long m);

// (m_1,...,m_k; n) = ((m_1 - 1, m_2, ..., m_k; 1)) + ((1, 0, ..., 0; n - 1)).
// The second summand's beta coefficient is taken as n-1 so that the two
// components sum to the input; this is enforced by an internal check.
std::pair<H1Class, H1Class> decompose_punctured_torus(const H1Class& alpha);

// Blockwise punctured-torus decomposition; each side is a connected sum of
// per-block simple loops.
std::pair<H1Class, H1Class> decompose_genus_sum(const H1Class& alpha);

// True when the class is represented by an embedded loop under the criteria
// used here: signed indicator vector (genus 0) or primitive vector (torus).
bool simple_representable(const H1Class& alpha);

struct SurfaceSpec;  // defined in geometry.hpp

struct BoundSide {
    double value = 0.0;
    std::string provenance;  // which estimate produced this side
};

struct BoundReport {
    BoundSide lower;
    BoundSide upper;
    double area_scale = 1.0;  // multiply values by this to undo Area(M)=1 normalization
};

struct BoundOptions {
    // Quasimorphism parameters for the genus-zero lower bound; negative
    // values select the defaults s1 = 0, s2 = 2A - 1.
    double s1 = -1.0;
    double s2 = -1.0;
};

// Certified estimates for the minimal Hofer energy l_A(alpha) needed to
// translate a disk of area A along alpha. Surface area is normalized to 1
// internally; report carries the scale factor.
BoundReport l_a_bounds(int genus, int punctures, double area, double A, const H1Class& alpha,
                       const BoundOptions& opts = {});

}  // namespace hofer
