#include "mpdet/observation.hpp"

#include <cmath>
#include <charconv>
#include <stdexcept>

#include "mpdet/gaussian.hpp"
#include "mpdet/rng.hpp"

namespace mpdet {

namespace {

constexpr std::uint64_t kNoiseStream = 0;
constexpr std::uint64_t kInterferenceStream = 1;
constexpr double kTwoPi = 6.283185307179586476925286766559;

double parse_real(std::string_view text, std::string_view token) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::invalid_argument("bad interference token: " + std::string(token));
    }
    return value;
}

}  // namespace

InterferenceKind parse_interference(std::string_view token) {
    if (token == "zero") return InterferenceKind::zero();
    if (token == "unif") return InterferenceKind::iid_uniform();
    if (token == "worst") return InterferenceKind::worst_case_size();
    if (token.rfind("const:", 0) == 0) {
        return InterferenceKind::constant(parse_real(token.substr(6), token));
    }
    if (token.rfind("alt:", 0) == 0) {
        return InterferenceKind::alternating(parse_real(token.substr(4), token));
    }
    if (token.rfind("sin:", 0) == 0) {
        const auto rest = token.substr(4);
        const auto sep = rest.find(':');
        if (sep == std::string_view::npos) {
            throw std::invalid_argument("bad interference token: " + std::string(token));
        }
        return InterferenceKind::sinusoidal(parse_real(rest.substr(0, sep), token),
                                            parse_real(rest.substr(sep + 1), token));
    }
    throw std::invalid_argument("unknown interference token: " + std::string(token));
}

std::string interference_token(const InterferenceKind& kind) {
    using Tag = InterferenceKind::Tag;
    char buffer[64];
    switch (kind.tag) {
        case Tag::zero:
            return "zero";
        case Tag::iid_uniform:
            return "unif";
        case Tag::worst_case_size:
            return "worst";
        case Tag::constant:
            std::snprintf(buffer, sizeof buffer, "const:%g", kind.amplitude);
            return buffer;
        case Tag::alternating:
            std::snprintf(buffer, sizeof buffer, "alt:%g", kind.amplitude);
            return buffer;
        case Tag::sinusoidal:
            std::snprintf(buffer, sizeof buffer, "sin:%g:%g", kind.amplitude, kind.period);
            return buffer;
    }
    throw std::logic_error("interference_token: unreachable");
}

ObservationSpec::ObservationSpec(bool epsilon_, double q_, std::size_t n_,
                                 InterferenceKind interference_, std::uint64_t seed_)
    : epsilon(epsilon_), q(q_), n(n_), interference(interference_), seed(seed_) {
    if (!(q >= 0.0 && q < 0.5)) {
        throw std::invalid_argument("ObservationSpec: q must lie in [0, 1/2)");
    }
    if (n < 1) {
        throw std::invalid_argument("ObservationSpec: n must be >= 1");
    }
    using Tag = InterferenceKind::Tag;
    switch (interference.tag) {
        case Tag::zero:
        case Tag::iid_uniform:
        case Tag::worst_case_size:
            break;
        case Tag::constant:
            if (!(std::fabs(interference.amplitude) <= q)) {
                throw std::invalid_argument("ObservationSpec: constant interference |c| must be <= q");
            }
            break;
        case Tag::alternating:
            if (!(interference.amplitude >= 0.0 && interference.amplitude <= q)) {
                throw std::invalid_argument("ObservationSpec: alternating amplitude must lie in [0, q]");
            }
            break;
        case Tag::sinusoidal:
            if (!(interference.amplitude >= 0.0 && interference.amplitude <= q)) {
                throw std::invalid_argument("ObservationSpec: sinusoidal amplitude must lie in [0, q]");
            }
            if (!(interference.period > 0.0)) {
                throw std::invalid_argument("ObservationSpec: sinusoidal period must be positive");
            }
            break;
    }
}

double delta_at(const ObservationSpec& spec, std::uint64_t trial_index, std::size_t i) {
    using Tag = InterferenceKind::Tag;
    switch (spec.interference.tag) {
        case Tag::zero:
            return 0.0;
        case Tag::constant:
            return spec.interference.amplitude;
        case Tag::alternating:
            return (i % 2 == 0) ? spec.interference.amplitude : -spec.interference.amplitude;
        case Tag::iid_uniform: {
            const double u = unit_open(counter_word(spec.seed, kInterferenceStream, trial_index, i));
            return spec.q * (2.0 * u - 1.0);
        }
        case Tag::worst_case_size:
            return spec.q;
        case Tag::sinusoidal:
            return spec.interference.amplitude *
                   std::sin(kTwoPi * static_cast<double>(i) / spec.interference.period);
    }
    throw std::logic_error("delta_at: unreachable");
}

double noise_at(const ObservationSpec& spec, std::uint64_t trial_index, std::size_t i) {
    return phi_inv(unit_open(counter_word(spec.seed, kNoiseStream, trial_index, i)));
}

void generate_into(const ObservationSpec& spec, std::uint64_t trial_index, std::span<double> y) {
    if (y.size() != spec.n) {
        throw std::invalid_argument("generate_into: output span size must equal spec.n");
    }
    const double eps = spec.epsilon ? 1.0 : 0.0;
    for (std::size_t i = 0; i < spec.n; ++i) {
        y[i] = eps + delta_at(spec, trial_index, i) + noise_at(spec, trial_index, i);
    }
}

std::vector<double> generate(const ObservationSpec& spec, std::uint64_t trial_index) {
    std::vector<double> y(spec.n);
    generate_into(spec, trial_index, y);
    return y;
}

}  // namespace mpdet
