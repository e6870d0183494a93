#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cremona/intersect.hpp"
#include "cremona/k3pipeline.hpp"

namespace cremona::report {

// One replayed claim: a stable identifier, the claim family it belongs to,
// and the expected/computed value pair rendered as strings.
struct CheckRecord {
  std::string id;
  std::string anchor;
  std::string expected;
  std::string computed;
  bool pass = false;
  long long elapsed_ms = 0;
};

struct VerificationReport {
  std::string command;
  std::vector<CheckRecord> checks;
  nlohmann::json data = nlohmann::json::object();
  long long elapsed_ms = 0;

  bool pass() const;
};

// Serialization: schema-versioned JSON object and a fixed-width console
// rendering. Two runs differ only in the elapsed_ms fields.
nlohmann::json to_json(const VerificationReport& r);
std::string render_text(const VerificationReport& r);

// Full geometric pipeline on a section fixture; always records exactly
// fourteen checks on success. Throws Error only when the input is invalid;
// downstream verification failures are recorded as failing checks.
VerificationReport verify_example(const k3::SectionInput& in);

// Intersection-number consistency report on one surface datum. Uses the
// non-throwing two-route evaluations so inconsistent data produces failing
// checks rather than an exception.
VerificationReport intersection(const SurfaceInvariants& s);

// Parses {"n":..,"m":..,"d":..,"delta":..,"kc":..,"k2":..,"c2":..,"chi":..,
// "g":..}; "xi" is optional and defaults to the degree formula. Throws Error
// on missing or non-integer fields.
SurfaceInvariants invariants_from_json(const nlohmann::json& j);

// Diophantine classification replay. case_filter 0 reports every
// certificate; 'a'..'g' restricts to that case (label prefix match).
// show_steps embeds the per-step integers into the data payload.
VerificationReport classification(bool show_steps = false, char case_filter = 0);

// Middle-cohomology lattice replay: discriminant group, the two unique class
// decompositions, the base-change isometry and its discriminant action.
VerificationReport lattice();

// Formal annihilation identity, plus its point-count realization when a
// section fixture is supplied.
VerificationReport motivic(const std::optional<k3::SectionInput>& points = std::nullopt);

}  // namespace cremona::report
