#pragma once

#include <span>
#include <string>
#include <vector>

#include "halley/errors.hpp"
#include "halley/ratmap.hpp"

namespace halley {

enum class FixedPointClass { Superattracting, Attracting, Repelling, RationallyIndifferent, IrrationallyIndifferent };

enum class FixedPointOrigin { RootOfP, SpecialCritical, Infinity, Other };

struct FixedPointRecord {
    SpherePoint location;
    Complex multiplier = 0.0;
    /// Multiplier expected from the root / critical-point structure of p.
    Complex predicted = 0.0;
    FixedPointClass kind = FixedPointClass::Repelling;
    FixedPointOrigin origin = FixedPointOrigin::Other;
    /// Root multiplicity k, or multiplicity l as a zero of p'. Zero at infinity.
    int multiplicity = 0;
};

/// Thrown when a measured multiplier disagrees with the prediction, or a fixed
/// point cannot be attributed to a root or critical point of p.
class FixedPointMismatch : public PropositionMismatch {
public:
    FixedPointMismatch(const std::string& what, FixedPointRecord record)
        : PropositionMismatch(what), record_(std::move(record)) {}
    const FixedPointRecord& record() const { return record_; }

private:
    FixedPointRecord record_;
};

inline constexpr double kSuperattractingTolerance = 1e-8;
inline constexpr double kIndifferenceBand = 1e-6;
inline constexpr double kMultiplierAgreement = 1e-6;

FixedPointClass classify_multiplier(Complex lambda);

/// One record per fixed point of r = halley_of(p), checked against the
/// closed-form multipliers (k-1)/(k+1), 1 + 2/l and (d+1)/(d-1).
std::vector<FixedPointRecord> classify_fixed_points(const Polynomial& p, const RationalMap& r);

/// Records with origin SpecialCritical.
std::vector<FixedPointRecord> extraneous_fixed_points(std::span<const FixedPointRecord> records);

std::string to_string(FixedPointClass c);
std::string to_string(FixedPointOrigin o);

}  // namespace halley
