#pragma once

// JSON views of the library's records, keyed by snake-cased symbol names.

#include <vector>

#include <nlohmann/json.hpp>

#include "qssa/bounds.hpp"
#include "qssa/integrator.hpp"
#include "qssa/params.hpp"
#include "qssa/validation.hpp"

namespace qssa {

using Json = nlohmann::ordered_json;

Json to_json(const ReactionConfig& c);
Json to_json(const IntegrationOptions& o);
Json to_json(const DerivedConstants& d);
Json to_json(const EpsilonSuite& e);
Json to_json(const DeltaStar& d);
Json to_json(const SlowErrorParams& p);
Json to_json(const TransientBounds& b);
Json to_json(const HypothesisReport& h);
Json to_json(const DepletionBounds& d);
Json to_json(const ErrorBounds& b);
Json to_json(const SmallK1Asymptotics& a);
Json to_json(const CrossingRecord& r);
Json to_json(const CheckResult& r);
Json to_json(const std::vector<CheckResult>& results);

/// Closed-form bounds for one configuration: transient bounds, hypothesis
/// flags (null outside q in [1/2, 1)), depletion and slow-phase error bounds.
Json bound_report(const ReactionConfig& config, double q = kDefaultQ);

/// Quick-reference report: reaction constants, the Segel-Slemrod pair, the
/// lowest-order table with reliability markers, and every exact bound.
/// Throws UsageError when s0 or e0 is not positive.
Json quick_reference(const ReactionConfig& config, double q = kDefaultQ);

}  // namespace qssa
