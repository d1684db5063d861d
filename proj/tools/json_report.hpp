#pragma once

// JSON renderings of library results. Every quantity carries its exact form
// next to a 12-digit decimal; the decimal is for reading only.

#include <json.hpp>

#include "dlab/bestapprox.hpp"
#include "dlab/contfrac.hpp"
#include "dlab/duality.hpp"
#include "dlab/dspace.hpp"
#include "dlab/lattice.hpp"
#include "dlab/witness.hpp"

namespace dlab::report {

using Json = nlohmann::ordered_json;

Json exact(const BigRational& r);
Json exact(const PowerProduct& v);
Json ints(const std::vector<BigInt>& v);

Json to_json(const ApproximationRecord& r);
Json to_json(const QuotientReport& r);
Json to_json(const ApproximabilityVerdict& v);
Json to_json(const WitnessPoint& w);
Json to_json(const WitnessReport& r);
Json to_json(const ConvergentTable& t);
Json to_json(const LatticeChain& c);
Json to_json(const ClaimReport& r);
Json to_json(const DualityParams& p);
Json to_json(const GrowthBoundReport& r);
Json to_json(const GrowthReport& r);
Json to_json(const ImplicationReport& r);
Json to_json(const AffineAutomorphism& phi);
Json to_json(const TransportReport& r);

}  // namespace dlab::report
