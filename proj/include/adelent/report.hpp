// JSON serialization of reports. Object keys come out sorted, reals are
// rounded to 12 significant digits (non-finite values become null) and exact
// rationals and big integers are strings.
#pragma once

#include <string>

#include <json.hpp>

#include "adelent/adelic.hpp"
#include "adelent/elliptic.hpp"
#include "adelent/heights.hpp"
#include "adelent/julia.hpp"
#include "adelent/morphic.hpp"
#include "adelent/solenoid.hpp"

namespace adelent {

using Json = nlohmann::json;

Json real(double x);
double real_from(const Json& j);

Json to_json(const ProjectiveHeight& h);
Json to_json(const CongruenceResult& c);
Json to_json(const ReductionInfo& r);
Json to_json(const HeightEstimate& e);
Json to_json(const LocalHeightReport& r);
Json to_json(const GlobalHeightReport& r);
Json to_json(const PlaceVolumes& v);
Json to_json(const EntropyTrace& t);
Json to_json(const MorphicHeightReport& r);
Json to_json(const JuliaHeight& h);
Json to_json(const EdsSequences& s);

template <class T>
T from_json(const Json& j);

template <> ProjectiveHeight from_json<ProjectiveHeight>(const Json& j);
template <> CongruenceResult from_json<CongruenceResult>(const Json& j);
template <> ReductionInfo from_json<ReductionInfo>(const Json& j);
template <> HeightEstimate from_json<HeightEstimate>(const Json& j);
template <> LocalHeightReport from_json<LocalHeightReport>(const Json& j);
template <> GlobalHeightReport from_json<GlobalHeightReport>(const Json& j);
template <> PlaceVolumes from_json<PlaceVolumes>(const Json& j);
template <> EntropyTrace from_json<EntropyTrace>(const Json& j);
template <> MorphicHeightReport from_json<MorphicHeightReport>(const Json& j);
template <> JuliaHeight from_json<JuliaHeight>(const Json& j);
template <> EdsSequences from_json<EdsSequences>(const Json& j);

// Two-space indented dump with a trailing newline.
std::string dump(const Json& j);

}  // namespace adelent
