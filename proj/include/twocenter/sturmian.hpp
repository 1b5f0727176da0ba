#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace twocenter {

/// Positive reduced fraction p/q.
struct Rational {
    std::int64_t p = 1;
    std::int64_t q = 1;

    /// Reduces and validates; throws std::invalid_argument unless p > 0 and q > 0.
    static Rational make(std::int64_t p, std::int64_t q);
    /// Accepts "p/q", an integer, or a decimal that is within 1e-12 of a
    /// fraction with denominator <= 10000.
    static Rational parse(std::string_view text);

    double value() const { return static_cast<double>(p) / static_cast<double>(q); }
    std::string str() const;
    friend bool operator==(const Rational&, const Rational&) = default;
};

namespace sturmian {

/// Crossings closer than this (in torus units) are treated as ambiguous.
inline constexpr double kLatticeTolerance = 1e-12;

/// The line y = m x + b on the lattice. When `rational_form` is set the
/// slope is exactly p/q and exponent recursion uses integer arithmetic.
struct SlopeIntercept {
    double m = 1.0;
    double b = 0.0;
    std::optional<Rational> rational_form;

    static SlopeIntercept irrational(double m, double b);
    static SlopeIntercept rational(Rational r, double b);
};

enum class Grid { Unit, Half };

struct ExponentSequence {
    std::vector<int> values;
    double slope = 0.0;
    bool periodic = false;

    /// Comma separated, e.g. "0,0,1,0".
    std::string str() const;
};

/// A word over {1,2,3} or {V,H}. Cyclic words compare equal under rotation.
class SymbolWord {
public:
    SymbolWord() = default;
    explicit SymbolWord(std::string symbols, bool cyclic = false);

    const std::string& str() const { return symbols_; }
    bool cyclic() const { return cyclic_; }
    std::size_t size() const { return symbols_.size(); }
    bool empty() const { return symbols_.empty(); }
    std::size_t count(char symbol) const;

    /// Lexicographically least rotation (identity for linear words).
    SymbolWord canonical() const;
    /// Swaps the symbols 1 and 2.
    SymbolWord relabeled() const;
    /// Canonical form modulo rotation and the 1<->2 swap.
    SymbolWord canonical_relabel() const;

    friend bool operator==(const SymbolWord& a, const SymbolWord& b);
    friend bool operator<(const SymbolWord& a, const SymbolWord& b) { return a.symbols_ < b.symbols_; }

private:
    std::string symbols_;
    bool cyclic_ = false;
};

/// Cyclic equality; optionally also up to exchanging the labels 1 and 2.
bool same_cyclic(const SymbolWord& a, const SymbolWord& b, bool allow_relabel);

/// Lexicographically least rotation of a string.
std::string least_rotation(std::string_view s);

struct Window {
    double phase = 0.0;
    char symbol = 'V';
};

/// Marked circles on the flattened torus; phases in [0,1).
struct WindowPhases {
    std::vector<Window> vertical;
    std::vector<Window> horizontal;
};

/// n_k = floor(m + {y_{k-1}}) for k = 1..count with y_k = b + k m.
/// Throws LatticeHit when some {y_k}, k = 0..count, is within tolerance of 0.
ExponentSequence sturmian_exponents(const SlopeIntercept& si, int count);

/// One period of exponents for slope p/q with the safe intercept:
/// q values summing to p on the unit grid, 2q values summing to 2p on the half grid.
ExponentSequence periodic_exponents(Rational slope, Grid grid);

/// v_labels[i mod |v_labels|] followed by h_label^{e_i}, concatenated.
SymbolWord word_from_exponents(const ExponentSequence& e, std::string_view v_labels, char h_label);

/// The cyclic V/H word of a slope-p/q line; independent of the intercept.
SymbolWord canonical_rational_word(Rational slope, Grid grid);

/// First `count` window crossings (x >= 0) of the torus line y = m x + b, in order.
/// Throws PhaseHit when the line passes within tolerance of a window intersection.
SymbolWord cutting_sequence(const WindowPhases& w, double m, double b, int count);

enum class WordFamily { Lemniscate, Satellite, Planetary };

/// Syzygy word for a rational torus of the given family.
///   Lemniscate: alternating 1,2 verticals with 3-exponents of the half grid,
///               starting with `lead`.
///   Satellite:  `lead` repeated for every vertical.
///   Planetary:  (12)^q.
SymbolWord family_word(WordFamily family, Rational w, char lead = '1');

/// Distinct cyclic syzygy words of length <= max_len, sorted.
/// Throws std::invalid_argument for max_len < 2.
std::vector<SymbolWord> enumerate_syzygy_words(int max_len);

struct BalanceReport {
    char run_symbol = '3';
    /// Run-symbol count following each other symbol (zeros included).
    std::vector<int> exponents;
    /// Maximal non-empty runs of the run symbol.
    std::vector<int> run_lengths;
    bool balanced = true;
    int min_exponent = 0;
    int max_exponent = 0;
    bool has_12_adjacency = false;
    /// 11 or 22 adjacent.
    bool has_stutter = false;
};

BalanceReport is_balanced(const SymbolWord& word);

}  // namespace sturmian
}  // namespace twocenter
