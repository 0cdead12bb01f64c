#pragma once

// Generators for observation vectors y_i = eps + delta_i + x_i with i.i.d.
// standard Gaussian noise x and bounded interference |delta_i| <= q.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mpdet {

/// The interference shapes the toolkit can generate. Every shape keeps
/// |delta_i| <= q for the q of the owning ObservationSpec.
struct InterferenceKind {
    enum class Tag {
        zero,             // delta_i = 0
        constant,         // delta_i = c, |c| <= q
        alternating,      // delta_i = +-amplitude by coordinate parity
        iid_uniform,      // delta_i ~ U[-q, q], one draw per coordinate
        worst_case_size,  // delta_i = +q, the mean shift maximizing false alarms
        sinusoidal,       // delta_i = amplitude * sin(2*pi*i / period)
    };

    Tag tag = Tag::zero;
    double amplitude = 0.0;  // c for constant; peak value for alternating/sinusoidal
    double period = 0.0;     // sinusoidal only

    static InterferenceKind zero() { return {Tag::zero, 0.0, 0.0}; }
    static InterferenceKind constant(double c) { return {Tag::constant, c, 0.0}; }
    static InterferenceKind alternating(double a) { return {Tag::alternating, a, 0.0}; }
    static InterferenceKind iid_uniform() { return {Tag::iid_uniform, 0.0, 0.0}; }
    static InterferenceKind worst_case_size() { return {Tag::worst_case_size, 0.0, 0.0}; }
    static InterferenceKind sinusoidal(double a, double p) { return {Tag::sinusoidal, a, p}; }
};

/// Parses an interference token: zero | const:<c> | alt:<a> | unif | worst | sin:<a>:<p>.
/// Throws std::invalid_argument on anything else.
InterferenceKind parse_interference(std::string_view token);

/// Inverse of parse_interference, used in reports and filenames.
std::string interference_token(const InterferenceKind& kind);

/// Generative model for one experiment arm. Construction validates
/// 0 <= q < 1/2, n >= 1, and that the interference shape stays within q.
struct ObservationSpec {
    bool epsilon;        // true when the signal is present
    double q;            // interference amplitude bound, in [0, 1/2)
    std::size_t n;       // observations per trial
    InterferenceKind interference;
    std::uint64_t seed;  // realizes the probability space; same seed => same data

    ObservationSpec(bool epsilon_, double q_, std::size_t n_, InterferenceKind interference_,
                    std::uint64_t seed_);
};

/// Interference value delta_i for the given trial and 0-based coordinate.
double delta_at(const ObservationSpec& spec, std::uint64_t trial_index, std::size_t i);

/// Gaussian noise value x_i, drawn by inverse-CDF transform of the counter
/// stream so results are identical on every platform and thread count.
double noise_at(const ObservationSpec& spec, std::uint64_t trial_index, std::size_t i);

/// Fills y with eps + delta_i + x_i. y.size() must equal spec.n.
void generate_into(const ObservationSpec& spec, std::uint64_t trial_index, std::span<double> y);

/// Allocating variant of generate_into.
std::vector<double> generate(const ObservationSpec& spec, std::uint64_t trial_index);

}  // namespace mpdet
