#pragma once

#include <optional>
#include <string>

#include "lmicenter/state_space.hpp"

namespace lmicenter {

/// On-disk model document: the state-space data plus the optional
/// generalized weight block and an optional Hermitian X.
struct ModelDocument {
  StateSpaceModel model;
  std::optional<GeneralizedWeight> weight;
  std::optional<HermitianMatrix> x;
};

/// Reads a JSON model file. Throws ParseError (naming the offending field)
/// on schema violations, NaN/Inf entries, or non-Hermitian Q/R/X blocks.
ModelDocument read_model(const std::string& path);
ModelDocument parse_model(const std::string& text);

/// Writes the document as JSON; real entries become bare numbers, complex
/// ones [re, im]. Doubles are serialized losslessly, so write -> read
/// round trips bit-identically.
void write_model(const std::string& path, const ModelDocument& doc);
std::string serialize_model(const ModelDocument& doc);

}  // namespace lmicenter
