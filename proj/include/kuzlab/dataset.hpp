#pragma once
// Maass-form dataset ingestion and canonical emission.
//
// On-disk format: JSON Lines, one object per form with keys
//   kappa        number or decimal string (string keeps > 15 digits exact)
//   parity       +1 or -1
//   coefficients array of numbers, index n-1 holds t(n), t(1) = 1
//   alpha        optional positive number
// Lines starting with '#' are provenance comments and are skipped.

#include "kuzlab/core.hpp"
#include "kuzlab/errors.hpp"
#include "kuzlab/forms.hpp"

#include <string>
#include <utility>
#include <vector>

namespace kuzlab {

struct DatasetManifest {
    std::string source;  // file path or catalog identifier
    u64 form_count = 0;
    real kappa_max = 0;
    u64 coeff_depth = 0; // minimum coefficient reach across records
    std::string checksum; // fnv1a64:<16 hex digits> of the canonical emission
};

// 64-bit FNV-1a over a byte string
u64 fnv1a64(const std::string& bytes);

// formats a real with 15 significant digits (the canonical number format)
std::string fmt15(real v);

// canonical one-line JSON for a record: fixed key order, fmt15 numbers,
// alpha omitted when absent, terminated with '\n'
std::string emit_record(const MaassFormRecord& form);

// canonical emission of a whole dataset (records assumed already sorted)
std::string emit_dataset(const std::vector<MaassFormRecord>& forms);

// parses, validates, sorts by kappa, collapses duplicates (|d kappa| < 1e-9,
// appending a note per collapse to *warnings when given), and fills the
// manifest. Throws ParseError with a line number or SchemaError naming the
// offending field.
std::pair<std::vector<MaassFormRecord>, DatasetManifest>
load_dataset(const std::string& path, std::vector<std::string>* warnings = nullptr);

// same parser over an in-memory buffer; source names the origin in errors
std::pair<std::vector<MaassFormRecord>, DatasetManifest>
parse_dataset(const std::string& text, const std::string& source,
              std::vector<std::string>* warnings = nullptr);

// resolves a catalog id to a local file, preferring cache_dir. A cached
// copy is checksum-verified and returned without network. Otherwise the
// catalog URL is fetched over HTTP (NetworkError when unreachable or the
// id is unknown; ChecksumMismatch when the payload does not match).
std::string fetch_remote(const std::string& catalog_id, const std::string& cache_dir);

} // namespace kuzlab
