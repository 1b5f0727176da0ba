#include "twocenter/sturmian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>

#include "twocenter/error.hpp"

namespace twocenter {

Rational Rational::make(std::int64_t p, std::int64_t q)
{
    if (p <= 0 || q <= 0) {
        throw std::invalid_argument("rational must be positive: " + std::to_string(p) + "/" + std::to_string(q));
    }
    const std::int64_t d = std::gcd(p, q);
    return Rational{p / d, q / d};
}

Rational Rational::parse(std::string_view text)
{
    const std::string s(text);
    const auto slash = s.find('/');
    try {
        if (slash != std::string::npos) {
            return make(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
        }
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) {
            throw std::invalid_argument("trailing characters");
        }
        for (std::int64_t q = 1; q <= 10000; ++q) {
            const double p = std::round(v * static_cast<double>(q));
            if (p >= 1.0 && std::abs(p / static_cast<double>(q) - v) <= 1e-12) {
                return make(static_cast<std::int64_t>(p), q);
            }
        }
    } catch (const std::invalid_argument&) {
    } catch (const std::out_of_range&) {
    }
    throw std::invalid_argument("not a positive rational: '" + s + "'");
}

std::string Rational::str() const
{
    return q == 1 ? std::to_string(p) : std::to_string(p) + "/" + std::to_string(q);
}

namespace sturmian {

namespace {

double frac(double x)
{
    return x - std::floor(x);
}

bool near_integer(double x)
{
    const double f = frac(x);
    return f < kLatticeTolerance || 1.0 - f < kLatticeTolerance;
}

// floor(b + r/q) minus floor(b), for 0 <= r < q; exact in the integer part.
int carry(double beta, std::int64_t r, std::int64_t q)
{
    return beta * static_cast<double>(q) >= static_cast<double>(q - r) ? 1 : 0;
}

}  // namespace

SlopeIntercept SlopeIntercept::irrational(double m, double b)
{
    return SlopeIntercept{m, b, std::nullopt};
}

SlopeIntercept SlopeIntercept::rational(Rational r, double b)
{
    return SlopeIntercept{r.value(), b, r};
}

std::string ExponentSequence::str() const
{
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(values[i]);
    }
    return out;
}

SymbolWord::SymbolWord(std::string symbols, bool cyclic)
    : symbols_(std::move(symbols)), cyclic_(cyclic)
{
}

std::size_t SymbolWord::count(char symbol) const
{
    return static_cast<std::size_t>(std::count(symbols_.begin(), symbols_.end(), symbol));
}

std::string least_rotation(std::string_view s)
{
    if (s.empty()) return {};
    const std::string doubled = std::string(s) + std::string(s);
    const std::string_view d(doubled);
    std::size_t best = 0;
    for (std::size_t i = 1; i < s.size(); ++i) {
        if (d.substr(i, s.size()) < d.substr(best, s.size())) best = i;
    }
    return std::string(d.substr(best, s.size()));
}

SymbolWord SymbolWord::canonical() const
{
    return cyclic_ ? SymbolWord(least_rotation(symbols_), true) : *this;
}

SymbolWord SymbolWord::relabeled() const
{
    std::string out = symbols_;
    for (char& c : out) {
        if (c == '1') c = '2';
        else if (c == '2') c = '1';
    }
    return SymbolWord(std::move(out), cyclic_);
}

SymbolWord SymbolWord::canonical_relabel() const
{
    const SymbolWord a = canonical();
    const SymbolWord b = relabeled().canonical();
    return b.symbols_ < a.symbols_ ? b : a;
}

bool operator==(const SymbolWord& a, const SymbolWord& b)
{
    if (a.cyclic_ != b.cyclic_ || a.size() != b.size()) return false;
    if (!a.cyclic_) return a.symbols_ == b.symbols_;
    return a.canonical().symbols_ == b.canonical().symbols_;
}

bool same_cyclic(const SymbolWord& a, const SymbolWord& b, bool allow_relabel)
{
    if (a.size() != b.size()) return false;
    const SymbolWord ca(a.str(), true);
    const SymbolWord cb(b.str(), true);
    if (allow_relabel) return ca.canonical_relabel().str() == cb.canonical_relabel().str();
    return ca.canonical().str() == cb.canonical().str();
}

ExponentSequence sturmian_exponents(const SlopeIntercept& si, int count)
{
    if (!(si.m > 0.0) || count <= 0) {
        throw std::invalid_argument("sturmian_exponents: need m > 0 and count > 0");
    }
    ExponentSequence out;
    out.slope = si.m;
    out.values.reserve(static_cast<std::size_t>(count));

    const double beta = frac(si.b);
    if (si.rational_form) {
        const auto [p, q] = *si.rational_form;
        std::int64_t prev_floor = 0;  // floor(y_0) - floor(b)
        for (std::int64_t k = 0; k <= count; ++k) {
            const std::int64_t r = (k * p) % q;
            if (near_integer(beta + static_cast<double>(r) / static_cast<double>(q))) {
                throw LatticeHit("line hits a lattice point at crossing " + std::to_string(k));
            }
            const std::int64_t cur_floor = (k * p) / q + carry(beta, r, q);
            if (k > 0) out.values.push_back(static_cast<int>(cur_floor - prev_floor));
            prev_floor = cur_floor;
        }
    } else {
        double prev = std::floor(si.b);
        if (near_integer(si.b)) throw LatticeHit("intercept is a lattice point");
        for (int k = 1; k <= count; ++k) {
            const double y = si.b + static_cast<double>(k) * si.m;
            if (near_integer(y)) {
                throw LatticeHit("line hits a lattice point at crossing " + std::to_string(k));
            }
            const double fl = std::floor(y);
            out.values.push_back(static_cast<int>(fl - prev));
            prev = fl;
        }
    }
    return out;
}

ExponentSequence periodic_exponents(Rational slope, Grid grid)
{
    const auto [p, q] = slope;
    ExponentSequence out;
    out.slope = slope.value();
    out.periodic = true;
    // y_k = 1/(2q) + k p/q on the (magnified) unit lattice.
    auto floor_y = [&](std::int64_t k) { return (1 + 2 * k * p) / (2 * q); };
    const int reps = grid == Grid::Half ? 2 : 1;
    for (int rep = 0; rep < reps; ++rep) {
        for (std::int64_t k = 1; k <= q; ++k) {
            out.values.push_back(static_cast<int>(floor_y(k) - floor_y(k - 1)));
        }
    }
    return out;
}

SymbolWord word_from_exponents(const ExponentSequence& e, std::string_view v_labels, char h_label)
{
    if (v_labels.empty()) throw std::invalid_argument("word_from_exponents: empty v_labels");
    std::string out;
    for (std::size_t i = 0; i < e.values.size(); ++i) {
        out += v_labels[i % v_labels.size()];
        out.append(static_cast<std::size_t>(e.values[i]), h_label);
    }
    return SymbolWord(std::move(out), e.periodic);
}

SymbolWord canonical_rational_word(Rational slope, Grid grid)
{
    return word_from_exponents(periodic_exponents(slope, grid), "V", 'H');
}

SymbolWord cutting_sequence(const WindowPhases& w, double m, double b, int count)
{
    if (!(m > 0.0) || count < 0) throw std::invalid_argument("cutting_sequence: need m > 0");
    for (const auto* list : {&w.vertical, &w.horizontal}) {
        for (const Window& win : *list) {
            if (win.phase < 0.0 || win.phase >= 1.0) {
                throw std::invalid_argument("cutting_sequence: window phase outside [0,1)");
            }
        }
    }

    struct Stream {
        bool vertical;
        char symbol;
        double base;  // vertical: phase; horizontal: psi - b
        double index;
    };
    std::vector<Stream> streams;
    for (const Window& v : w.vertical) streams.push_back({true, v.symbol, v.phase, 0.0});
    for (const Window& h : w.horizontal) {
        streams.push_back({false, h.symbol, h.phase - b, std::ceil(b - h.phase)});
    }
    auto position = [m](const Stream& s) { return s.vertical ? s.base + s.index : (s.base + s.index) / m; };

    struct Event {
        double x;
        bool vertical;
        char symbol;
    };
    std::vector<Event> events;
    if (streams.empty()) return SymbolWord({}, false);
    // One extra event so the last emitted crossing is also checked for ties.
    while (static_cast<int>(events.size()) < count + 1) {
        auto next = std::min_element(streams.begin(), streams.end(),
                                     [&](const Stream& a, const Stream& c) { return position(a) < position(c); });
        events.push_back({position(*next), next->vertical, next->symbol});
        next->index += 1.0;
    }
    const double scale = std::max(1.0, m);
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
        const Event& a = events[i];
        const Event& c = events[i + 1];
        if (a.vertical != c.vertical &&
            std::abs(c.x - a.x) * scale < kLatticeTolerance * std::max(1.0, std::abs(a.x))) {
            throw PhaseHit("line passes through a window intersection near x = " + std::to_string(a.x));
        }
    }
    std::string out;
    for (int i = 0; i < count; ++i) out += events[static_cast<std::size_t>(i)].symbol;
    return SymbolWord(std::move(out), false);
}

SymbolWord family_word(WordFamily family, Rational w, char lead)
{
    if (lead != '1' && lead != '2') throw std::invalid_argument("family_word: lead must be 1 or 2");
    switch (family) {
    case WordFamily::Planetary: {
        std::string out;
        for (std::int64_t i = 0; i < w.q; ++i) out += "12";
        return SymbolWord(std::move(out), true);
    }
    case WordFamily::Lemniscate: {
        const std::string labels = lead == '1' ? "12" : "21";
        return word_from_exponents(periodic_exponents(w, Grid::Half), labels, '3');
    }
    case WordFamily::Satellite:
        return word_from_exponents(periodic_exponents(w, Grid::Half), std::string(1, lead), '3');
    }
    throw std::logic_error("unreachable");
}

std::vector<SymbolWord> enumerate_syzygy_words(int max_len)
{
    if (max_len < 2) throw std::invalid_argument("enumerate_syzygy_words: max_len must be >= 2");
    std::set<std::string> seen;
    auto add = [&](const SymbolWord& word) { seen.insert(word.canonical().str()); };

    for (std::int64_t n = 2; 2 * n <= max_len; ++n) {
        for (std::int64_t p = 1; p < n; ++p) {
            const std::int64_t q = n - p;
            if (std::gcd(p, q) != 1) continue;
            const Rational w{p, q};
            // For even q both labelings of the vertical pair occur on one torus.
            add(family_word(WordFamily::Lemniscate, w, '1'));
            add(family_word(WordFamily::Lemniscate, w, '2'));
            // S tori have W > 1
            if (p > q) {
                add(family_word(WordFamily::Satellite, w, '1'));
                add(family_word(WordFamily::Satellite, w, '2'));
            }
        }
    }
    // W < 1 on P tori, so q >= 2
    for (std::int64_t q = 2; 2 * q <= max_len; ++q) add(family_word(WordFamily::Planetary, Rational{1, q}));

    const auto bound = static_cast<std::size_t>(max_len) * static_cast<std::size_t>(max_len) / 4 + 1;
    if (seen.size() > bound) {
        throw std::logic_error("syzygy word count exceeds L^2/4 + 1");
    }
    std::vector<SymbolWord> out;
    out.reserve(seen.size());
    for (const auto& s : seen) out.emplace_back(s, true);
    std::sort(out.begin(), out.end(), [](const SymbolWord& a, const SymbolWord& c) {
        return a.size() != c.size() ? a.size() < c.size() : a.str() < c.str();
    });
    return out;
}

BalanceReport is_balanced(const SymbolWord& word)
{
    BalanceReport r;
    const std::string& s = word.str();
    const std::size_t n = s.size();
    r.run_symbol = (s.find_first_of("VH") != std::string::npos) ? 'H' : '3';
    if (n == 0) return r;

    std::vector<std::size_t> marks;
    for (std::size_t i = 0; i < n; ++i) {
        if (s[i] != r.run_symbol) marks.push_back(i);
    }
    const std::size_t limit = word.cyclic() ? marks.size() : (marks.empty() ? 0 : marks.size() - 1);
    for (std::size_t k = 0; k < limit; ++k) {
        const std::size_t from = marks[k];
        const std::size_t to = (k + 1 < marks.size()) ? marks[k + 1] : marks[0] + n;
        r.exponents.push_back(static_cast<int>(to - from - 1));
    }
    if (!r.exponents.empty()) {
        const auto [lo, hi] = std::minmax_element(r.exponents.begin(), r.exponents.end());
        r.min_exponent = *lo;
        r.max_exponent = *hi;
        r.balanced = *hi - *lo <= 1;
    }

    if (marks.empty()) {
        r.run_lengths.push_back(static_cast<int>(n));
    } else if (word.cyclic()) {
        for (int e : r.exponents) {
            if (e > 0) r.run_lengths.push_back(e);
        }
    } else {
        std::size_t i = 0;
        while (i < n) {
            if (s[i] != r.run_symbol) { ++i; continue; }
            std::size_t j = i;
            while (j < n && s[j] == r.run_symbol) ++j;
            r.run_lengths.push_back(static_cast<int>(j - i));
            i = j;
        }
    }

    const std::size_t pairs = word.cyclic() ? n : n - 1;
    for (std::size_t i = 0; i < pairs && n > 1; ++i) {
        const char a = s[i];
        const char c = s[(i + 1) % n];
        if ((a == '1' && c == '2') || (a == '2' && c == '1')) r.has_12_adjacency = true;
        if ((a == '1' || a == '2') && a == c) r.has_stutter = true;
    }
    return r;
}

}  // namespace sturmian
}  // namespace twocenter
