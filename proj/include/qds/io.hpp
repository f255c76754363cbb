#pragma once

// The qgroup JSON file format. Scalars are "p/q" strings in exact mode and
// numbers in float mode; output is canonical so that save(load(f)) == f.

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "qds/hopf.hpp"

namespace qds {

using Json = nlohmann::ordered_json;

inline constexpr const char* kQGroupSchema = "qds.qgroup/1";

using AnyQGroup = std::variant<HopfStarAlgebra<GaussRational>, HopfStarAlgebra<Complex>>;

template <class T>
Json to_json(const HopfStarAlgebra<T>& h);
Json to_json(const AnyQGroup& h);

/// Validates shapes and index ranges before any algebraic check. Throws
/// Error(Parse) naming the source and the offending field.
AnyQGroup qgroup_from_json(const Json& j, const std::string& source = "<input>");

/// Two-space indented dump with a trailing newline.
std::string dump_canonical(const Json& j);

AnyQGroup load_qgroup(const std::filesystem::path& path);
void save_qgroup(const std::filesystem::path& path, const AnyQGroup& h);
void write_text(const std::filesystem::path& path, const std::string& text);

HopfStarAlgebra<Complex> as_complex(const AnyQGroup& h);
const std::string& name_of(const AnyQGroup& h);

/// Scalar encodings shared with the report writer.
Json scalar_json(const GaussRational& z);
Json scalar_json(const Complex& z);
template <class T>
Json vector_json(const Vec<T>& v);

}  // namespace qds
