#pragma once

// JSON documents for models, states, fermionic models and TEE results, plus CSV export.
//
// Every document is an object {"kind": ..., "version": 1, ...}. Unknown fields are
// rejected, a different version raises VersionError, and every other schema problem
// raises ParseError whose check() is the offending field path (e.g. "sectors[2].W[0][1]").
// Complex numbers are [re, im] pairs; matrices are lists of rows.

#include "anyon/entropy.hpp"
#include "anyon/fermionic.hpp"
#include "anyon/model.hpp"
#include "anyon/state.hpp"
#include "anyon/tee.hpp"

#include <string>
#include <variant>
#include <vector>

namespace anyon::io {

inline constexpr int kFormatVersion = 1;

inline constexpr const char* kCsvHeader =
    "model,geometry,convention,n,m,l,charges,alpha,entropy,linear_term,topo_term,charge_term,F";

std::string model_to_json(const AnyonModel& m);
/// Parses and validates; axiom failures raise ValidationError naming the first failed check.
AnyonModel model_from_json(const std::string& text, double tol = kDefaultTol);

/// The model is referenced by catalog name when it is exactly the catalog entry,
/// otherwise embedded as a full model document.
std::string state_to_json(const SectorState& s);
std::string state_to_json(const BipartitePureState& s);
using AnyState = std::variant<SectorState, BipartitePureState>;
AnyState state_from_json(const std::string& text, double tol = kDefaultTol);
/// Same as state_from_json but requires the sector form; the state must pass check().
SectorState sector_state_from_json(const std::string& text, double tol = kDefaultTol);

/// Model document fields plus {"fermion": label}, with kind "super".
std::string super_to_json(const SuperModel& sm);
SuperModel super_from_json(const std::string& text, double tol = kDefaultTol);

std::string results_to_json(const std::vector<TeeResult>& results);
std::vector<TeeResult> results_from_json(const std::string& text);
/// Header kCsvHeader then one row per result. Numbers use 17 significant digits;
/// von Neumann rows carry alpha = 1. Absent segment columns are empty.
std::string results_to_csv(const std::vector<TeeResult>& results);

/// {"vn", "renyi": {alpha: value}, "shannon", "charge", "units"}; every entropy is
/// multiplied by `scale` (1/ln 2 for bits).
std::string entropy_report_to_json(const EntropyReport& r, double scale = 1.0, const std::string& units = "nats");

/// Locale-independent shortest round-trip text of x ("%.17g" when `fixed17`).
std::string format_number(double x, bool fixed17 = false);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

AnyonModel load_model(const std::string& path, double tol = kDefaultTol);
void save_model(const AnyonModel& m, const std::string& path);
AnyState load_state(const std::string& path, double tol = kDefaultTol);
void save_state(const SectorState& s, const std::string& path);
void save_state(const BipartitePureState& s, const std::string& path);
void export_csv(const std::vector<TeeResult>& results, const std::string& path);
void export_json(const std::vector<TeeResult>& results, const std::string& path);

}  // namespace anyon::io
