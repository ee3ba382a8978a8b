#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "scissors/complex.hpp"
#include "scissors/functor.hpp"

namespace scissors {

// Complex documents are JSON objects with the fields objects, bottom, leq, hmors,
// compose, inverse, restrict, covers and an optional cap. SCISSORS_CLOSURE_CAP
// overrides the cap. Throws ParseError on malformed input.
PolytopeComplex load_complex(std::string_view document);
PolytopeComplex load_complex_file(const std::filesystem::path& path);

// Inverse of load_complex: synthesized identities, composites with identities and
// default restrictions are left out; covers are written as the basis.
std::string dump_complex(const PolytopeComplex& c);

// {source, target, objects, hmors}; paths are relative to the functor file.
// Omitted objects must be the bottom; omitted identities map to identities.
PolytopeFunctor load_functor_file(const std::filesystem::path& path);
std::string dump_functor(const PolytopeFunctor& f, const std::string& source_path, const std::string& target_path);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace scissors
