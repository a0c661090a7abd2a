#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace besselmu {

// Numerical checks of the four elementary integral estimates used for the
// supremum density. Only the first carries explicit constants.

struct LemmaCase {
    int lemma_id = 0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;  ///< unused by lemma 1
    double integral = 0.0;
    double integral_error = 0.0;  ///< quadrature error estimate
    double envelope = 0.0;
    double ratio = 0.0;
};

inline constexpr double kLemma1Lo = 1.0 / 12.0;
inline constexpr double kLemma1Hi = 2.0;
inline constexpr std::uint64_t kDefaultSweepSeed = 20240607;

/// int_a^b w/(1+w) e^{w/2} dw against e^{b/2} (1 ^ b)(1 ^ (b-a)); 0 < a < b.
LemmaCase lemma1_check(double a, double b);

/// int_0^inf ((a+b+v)/(b+v))^{3/2} e^{-cv} dv against (a+b)^{3/2} / (sqrt(b) (1+bc));
/// a, b, c > 0 and ac > 1.
LemmaCase lemma2_check(double a, double b, double c);

/// int_0^inf (w+a)^{5/2} e^{-w} / ((w+b)^2 (w+c)) dw against
/// a^{5/2} / (b (b+1) c) + 1/(1+c); a, c > b > 0 and a < 2 when b < 1.
LemmaCase lemma3_check(double a, double b, double c);

/// int_0^a (w+b)^{3/2} e^{-w} / (sqrt(w) (w+c)) dw against
/// (1 ^ a) + b^{3/2} / sqrt(c (1+c)); a > b > c > 0 and a <= 2b when a >= 1.
LemmaCase lemma4_check(double a, double b, double c);

LemmaCase lemma_check(int lemma_id, double a, double b, double c = 0.0);

struct LemmaSweep {
    int lemma_id = 0;
    std::uint64_t seed = 0;
    std::vector<LemmaCase> cases;
    double min_ratio = 0.0;
    double max_ratio = 0.0;

    /// Lemma 1 only: every ratio inside [1/12, 2] up to 1e-9.
    bool within_constants() const;
};

/// n cases drawn from the lemma's domain with a seeded mt19937_64; the same
/// (lemma, n, seed) always produces the same cases.
LemmaSweep lemma_sweep(int lemma_id, int n, std::uint64_t seed = kDefaultSweepSeed);

/// Columns: lemma,a,b,c,integral,integral_error,envelope,ratio.
void write_lemma_csv(std::ostream& os, const LemmaSweep& sweep);

}  // namespace besselmu
