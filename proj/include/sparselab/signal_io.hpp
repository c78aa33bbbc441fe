#pragma once

// Signal and mesh-signal file formats.  See docs/formats.md.
//
//   text:   one "index value" pair per line; '#' starts a comment.  Indices
//           may come in any order; gaps are zero-filled.
//   binary: little-endian  i64 offset | u64 length | f64 values[length]
//   mesh:   little-endian  f64 x0 | f64 h | u64 count | (f64 re, f64 im)[count]

#include <filesystem>
#include <iosfwd>

#include "sparselab/mesh.hpp"
#include "sparselab/signal.hpp"

namespace sparselab::io {

Signal read_signal_text(std::istream& in);
void write_signal_text(std::ostream& out, const Signal& f);

Signal read_signal_binary(std::istream& in);
void write_signal_binary(std::ostream& out, const Signal& f);

MeshSignal read_mesh_binary(std::istream& in);
void write_mesh_binary(std::ostream& out, const MeshSignal& f);

// Dispatch on extension: ".bin" is binary, anything else is text.
Signal load_signal(const std::filesystem::path& path);
void save_signal(const std::filesystem::path& path, const Signal& f);

}  // namespace sparselab::io
