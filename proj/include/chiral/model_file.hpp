#pragma once

#include <memory>
#include <optional>
#include <string>

#include "chiral/algebroid.hpp"
#include "chiral/atlas.hpp"
#include "chiral/lie_data.hpp"

namespace chiral {

enum class ModelKind { Weil, Algebroid, Atlas, Tensor };

// Second factor of a tensor model W(g) (x) B.
enum class TensorFactor { Weil, Algebroid, Trivial };

// Parsed and validated model description. Structure constants, anchors and transition
// data are checked on load; a failure throws ValidationError.
struct ModelFile {
  ModelKind kind = ModelKind::Weil;
  std::string name;
  LieData lie;                    // weil, tensor, and algebroids given by a Lie action
  bool has_lie = false;
  std::optional<AlgebroidData> algebroid;
  bool transformation = false;    // algebroid frame is a basis of `lie`
  std::shared_ptr<Atlas> atlas;
  TensorFactor factor = TensorFactor::Weil;
  int trivial_m = 0, trivial_r = 0;
  std::optional<Caps> caps;       // upper bounds declared by the file
};

ModelFile parse_model_file(const std::string& text);
ModelFile load_model_file(const std::string& path);

std::string kind_name(ModelKind k);

}  // namespace chiral
