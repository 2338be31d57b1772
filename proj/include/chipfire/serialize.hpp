#pragma once

#include <string>

#include <json.hpp>

#include "chipfire/game.hpp"
#include "chipfire/halting.hpp"
#include "chipfire/numbers.hpp"
#include "chipfire/reach.hpp"

namespace chipfire {

using Json = nlohmann::json;

/// Integer values are emitted as JSON numbers when they fit in 64 bits and as
/// decimal strings beyond that; the readers accept both.
Json int_to_json(const Int& v);
Int int_from_json(const Json& j);

Json vec_to_json(const Vec& v);
Vec vec_from_json(const Json& j);

/// {"type":"game","firings":[[vertex,count],...]} with 1-based vertices.
Json witness_to_json(const GameTrace& t);
std::vector<FiringRun> witness_runs_from_json(const Json& j);

/// {"type":"nonreach","f":[...],"g":[...]}
Json certificate_to_json(const ReachCertificate& c);
ReachCertificate certificate_from_json(const Json& j);

/// {"type":"nonterminating","y":[...]}
Json halting_certificate_to_json(const HaltingCertificate& c);
HaltingCertificate halting_certificate_from_json(const Json& j);

/// Parse a whitespace-separated integer vector ('#' comment lines allowed);
/// must have exactly n entries.
Vec parse_vector(const std::string& text, int n);

/// One line, whitespace-separated.
std::string write_vector(const Vec& v);

/// Human-readable run-length trace, e.g. "v1 x3, v2 x1"; "(empty)" for the
/// empty game.
std::string format_runs(const std::vector<FiringRun>& runs);

}  // namespace chipfire
