#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dist235/cartan.hpp"
#include "dist235/oracle.hpp"

namespace dist235 {

/// A model or coframe document that failed validation. `where()` is the JSON pointer of the
/// offending value; line and column (1-based) locate it in the document text.
class ModelError : public ParseError {
 public:
  ModelError(const std::string& message, std::string pointer, std::size_t position, std::size_t line,
             std::size_t column);

  const std::string& where() const noexcept { return pointer_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::string pointer_;
  std::size_t line_, column_;
};

struct WorkingPoint {
  std::vector<Rational> q;
  std::vector<std::array<Rational, 2>> u;  // (u4, u5) pairs; defaults to (0,1), (1,1)
};

struct CoframeDocument {
  std::string title;
  std::vector<std::string> coordinates;
  std::optional<std::string> monge;
  CartanCoframe coframe;
  std::vector<std::vector<Rational>> points;
};

struct ModelSpec {
  std::string name;
  std::vector<std::string> coordinates;
  std::optional<std::string> monge;     // F in z' = F, a function of the coordinates
  std::array<std::string, 2> field_text;  // X1, X2 as "[c1, ..., c5]"
  VectorField x1, x2;
  std::vector<WorkingPoint> points;
  std::optional<CoframeDocument> coframe;
  OracleOptions orders;
  std::string fingerprint;  // fnv1a64 of the canonical document
};

inline constexpr std::string_view kModelSchema = "distribution-model/1";
inline constexpr std::string_view kCoframeSchema = "cartan-coframe/1";

/// `base` resolves a coframe given as a relative path.
ModelSpec parse_model(std::string_view text, const std::filesystem::path& base = {});
ModelSpec load_model(const std::filesystem::path& path);

CoframeDocument parse_coframe(std::string_view text);
CoframeDocument load_coframe(const std::filesystem::path& path);

}  // namespace dist235
