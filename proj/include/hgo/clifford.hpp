#ifndef HGO_CLIFFORD_HPP
#define HGO_CLIFFORD_HPP

#include "hgo/linalg.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace hgo {

// Center signature. Basis order is Z_1..Z_r positive, then Z_{r+1}..Z_{r+s}
// negative, so eps(i) is +1 for i < r (0-based).
struct Signature {
    int r = 0;
    int s = 0;

    int n() const { return r + s; }
    int eps(int i) const { return i < r ? 1 : -1; }
    DiagMetric metric() const;
    bool valid() const { return r >= 0 && s >= 0 && r + s >= 1; }
    friend bool operator==(const Signature& a, const Signature& b) { return a.r == b.r && a.s == b.s; }
    friend bool operator!=(const Signature& a, const Signature& b) { return !(a == b); }
};

std::string to_string(const Signature& sig);

// Monomial Z_{i_1}...Z_{i_k} with i_1 < ... < i_k, stored as a bitmask
// (bit i = generator i, 0-based).
using Word = std::uint32_t;

struct SignedWord {
    int sign;
    Word word;
};

SignedWord word_mul(Word a, Word b, const Signature& sig);
int word_square(Word p, const Signature& sig);
bool words_commute(Word a, Word b);
int word_negatives(Word p, const Signature& sig);
// P1 (p^2 = 1) and P2 (J_p preserves the sign of the norm).
bool is_positive_involution(Word p, const Signature& sig);
std::string word_str(Word w);
Word parse_word(const std::string& text);
std::vector<int> word_indices(Word w);
Word make_word(const std::vector<int>& one_based);
// degree first, then lexicographic on the sorted index list
bool degree_lex_less(Word a, Word b);

struct InvolutionSet {
    std::vector<Word> generators;
    std::size_t ell() const { return generators.size(); }
};

// Largest size of a pairwise commuting, multiplicatively independent set of
// positive involution words.
std::size_t ell(const Signature& sig);
InvolutionSet enumerate_positive_involutions(const Signature& sig);
bool is_valid_involution_set(const InvolutionSet& pi, const Signature& sig, std::string* why = nullptr);

struct CliffordModule {
    Signature sig;
    std::size_t module_dim = 0;
    DiagMetric eta_v;
    std::vector<RatMatrix> generators;
    std::size_t multiplicity = 1;
    // Basis labels J_sigma v when built from involutions; empty otherwise.
    std::vector<Word> sigma;
    InvolutionSet pi;
    std::string origin;

    RatMatrix J(const RatVec& z) const;
};

// Left ideal Cl*e, e = prod (1+p_k)/2, with basis J_sigma v over degree-lex
// minimal coset representatives.
CliffordModule module_from_involutions(const Signature& sig, const InvolutionSet& pi);

// J matrices from a bracket table via <J_Z X, Y> = <[X,Y], Z>.
// table[k] lists (i, j, coeff) meaning [X_i, X_j] has Z_k-component coeff.
struct BracketEntry {
    int i, j, k, coeff;
};
CliffordModule module_from_brackets(const Signature& sig, const DiagMetric& eta, const std::vector<BracketEntry>& table);

CliffordModule build_minimal_module(const Signature& sig, std::size_t multiplicity = 1);
CliffordModule repeat_module(const CliffordModule& mod, std::size_t multiplicity);

struct InvariantBasis {
    RatVec v;
    std::vector<Word> sigma;
    std::vector<RatVec> vectors;
};

InvariantBasis invariant_basis(const CliffordModule& mod, const InvolutionSet& pi);
// Module rewritten in the given basis (columns of P are the new basis).
CliffordModule change_basis(const CliffordModule& mod, const InvariantBasis& basis);

CliffordModule tensor_periodicity(const CliffordModule& a, const CliffordModule& b);
bool is_period(const Signature& sig);

struct VolumeElement {
    RatMatrix J_omega;
    int omega_square;
};
int omega_square_formula(const Signature& sig);
VolumeElement volume_element(const CliffordModule& mod);

struct CheckReport {
    bool ok = true;
    std::string failure;

    void fail(const std::string& msg) {
        if (ok) failure = msg;
        ok = false;
    }
};

// Invariants (i)-(iv) exhaustively, (v) on `samples` random rational triples.
CheckReport check_module_invariants(const CliffordModule& mod, std::mt19937_64& rng, int samples = 100);
// Each generator maps every basis vector to +- another basis vector.
bool is_signed_permutation(const RatMatrix& M);

std::string dump_module(const CliffordModule& mod);
CliffordModule parse_module(const std::string& text);

// Hand-seeded small-signature modules, in the conventions of the printed
// bracket relations and matrices for (1,1), (0,2), (1,2), (2,1), (0,3).
CliffordModule seeded_module(const Signature& sig);
bool has_seeded_module(const Signature& sig);

// Deterministic rational in [-100,100]/[1,100] drawn without std distributions.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);
Rational random_rational(std::mt19937_64& rng, long range = 100);
RatVec random_vector(std::mt19937_64& rng, std::size_t n, long range = 100);

}  // namespace hgo

#endif  // HGO_CLIFFORD_HPP
