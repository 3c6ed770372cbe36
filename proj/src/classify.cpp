#include "halley/classify.hpp"

#include <cmath>
#include <sstream>

namespace halley {

namespace {

constexpr double kMatchTolerance = 1e-6;
constexpr int kMaxRationalOrder = 64;

std::string describe(const FixedPointRecord& r) {
    std::ostringstream os;
    if (r.location.is_infinity())
        os << "infinity";
    else
        os << r.location.value();
    os << " measured " << r.multiplier << " predicted " << r.predicted;
    return os.str();
}

struct Candidate {
    Complex location;
    FixedPointOrigin origin;
    int multiplicity;
    Complex predicted;
    bool used = false;
};

}  // namespace

FixedPointClass classify_multiplier(Complex lambda) {
    const double m = std::abs(lambda);
    if (m < kSuperattractingTolerance) return FixedPointClass::Superattracting;
    if (m < 1.0 - kIndifferenceBand) return FixedPointClass::Attracting;
    if (m > 1.0 + kIndifferenceBand) return FixedPointClass::Repelling;
    Complex power = 1.0;
    for (int q = 1; q <= kMaxRationalOrder; ++q) {
        power *= lambda;
        if (std::abs(power - 1.0) <= kIndifferenceBand * q) return FixedPointClass::RationallyIndifferent;
    }
    return FixedPointClass::IrrationallyIndifferent;
}

std::vector<FixedPointRecord> classify_fixed_points(const Polynomial& p, const RationalMap& r) {
    std::vector<Candidate> candidates;
    const auto roots = find_roots(p);
    for (const RootCluster& c : roots) {
        const double k = c.multiplicity;
        candidates.push_back({c.location, FixedPointOrigin::RootOfP, c.multiplicity, (k - 1.0) / (k + 1.0)});
    }
    const Polynomial dp = p.derivative();
    if (dp.degree() >= 1) {
        for (const RootCluster& c : find_roots(dp)) {
            bool on_root = false;
            for (const RootCluster& root : roots)
                on_root = on_root || std::abs(root.location - c.location) < kMatchTolerance;
            if (on_root) continue;
            candidates.push_back({c.location, FixedPointOrigin::SpecialCritical, c.multiplicity,
                                  1.0 + 2.0 / c.multiplicity});
        }
    }

    std::vector<FixedPointRecord> out;
    for (const SpherePoint& f : fixed_points(r)) {
        FixedPointRecord rec;
        rec.location = f;
        rec.multiplier = multiplier_at(r, f);
        rec.kind = classify_multiplier(rec.multiplier);
        if (f.is_infinity()) {
            const double d = p.degree();
            rec.origin = FixedPointOrigin::Infinity;
            rec.predicted = (d + 1.0) / (d - 1.0);
        } else {
            Candidate* match = nullptr;
            for (Candidate& c : candidates) {
                if (std::abs(c.location - f.value()) >= kMatchTolerance * std::max(1.0, std::abs(c.location)))
                    continue;
                if (match != nullptr)
                    throw FixedPointMismatch("fixed point matches several roots/critical points: " + describe(rec),
                                             rec);
                match = &c;
            }
            if (match == nullptr || match->used)
                throw FixedPointMismatch("fixed point with no root or critical-point origin: " + describe(rec), rec);
            match->used = true;
            rec.origin = match->origin;
            rec.multiplicity = match->multiplicity;
            rec.predicted = match->predicted;
        }
        if (std::abs(rec.multiplier - rec.predicted) > kMultiplierAgreement * std::max(1.0, std::abs(rec.predicted)))
            throw FixedPointMismatch("multiplier disagrees with prediction: " + describe(rec), rec);
        out.push_back(rec);
    }
    for (const Candidate& c : candidates) {
        if (c.used) continue;
        FixedPointRecord rec;
        rec.location = c.location;
        rec.origin = c.origin;
        rec.multiplicity = c.multiplicity;
        rec.predicted = c.predicted;
        throw FixedPointMismatch("expected fixed point not found: " + describe(rec), rec);
    }
    return out;
}

std::vector<FixedPointRecord> extraneous_fixed_points(std::span<const FixedPointRecord> records) {
    std::vector<FixedPointRecord> out;
    for (const FixedPointRecord& r : records)
        if (r.origin == FixedPointOrigin::SpecialCritical) out.push_back(r);
    return out;
}

std::string to_string(FixedPointClass c) {
    switch (c) {
        case FixedPointClass::Superattracting: return "superattracting";
        case FixedPointClass::Attracting: return "attracting";
        case FixedPointClass::Repelling: return "repelling";
        case FixedPointClass::RationallyIndifferent: return "rationally-indifferent";
        case FixedPointClass::IrrationallyIndifferent: return "irrationally-indifferent";
    }
    return "unknown";
}

std::string to_string(FixedPointOrigin o) {
    switch (o) {
        case FixedPointOrigin::RootOfP: return "root";
        case FixedPointOrigin::SpecialCritical: return "critical";
        case FixedPointOrigin::Infinity: return "infinity";
        case FixedPointOrigin::Other: return "other";
    }
    return "unknown";
}

}  // namespace halley
