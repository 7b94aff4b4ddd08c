#pragma once

// JSON views of the library's values. Every document is plain data: field
// descriptors as "p^m" strings, elements as integer encodings.

#include "json.hpp"

#include "fqlab/decompositions.hpp"
#include "fqlab/field.hpp"
#include "fqlab/fqset.hpp"
#include "fqlab/lemmas.hpp"
#include "fqlab/proof_trace.hpp"
#include "fqlab/set_algebra.hpp"
#include "fqlab/survey.hpp"

namespace fqlab {

using nlohmann::json;

json to_json(const Field& f);
json to_json(const FqSet& s);
/// {field, members}; throws ParseError on malformed documents.
FqSet set_from_json(const json& j, std::uint64_t cap = kDefaultFieldCap);

json to_json(const RepSpectrum& s);
json to_json(const ProfileReport& r);
json to_json(const DyadicSlice& s);
json to_json(const PopularPoints& p);
json to_json(const Cover& c);
/// Timing is only included when asked for, so reports compare byte for byte.
json to_json(const LemmaReport& r, bool with_timing = false);
json to_json(const ProofTrace& t);
json to_json(const SurveyRecord& r);
json to_json(const CorollaryRecord& r);
json to_json(const MinExpanderResult& r);

}  // namespace fqlab
