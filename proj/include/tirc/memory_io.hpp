#ifndef TIRC_MEMORY_IO_HPP
#define TIRC_MEMORY_IO_HPP

#include <filesystem>

#include "tirc/memory.hpp"

namespace tirc {

// Persists a memory unit as <dir>/<id>.png mask files plus
// <dir>/index.json (features, capacity target, ready flag).
void save_memory(const std::filesystem::path& dir, const MemoryUnit& mem);
MemoryUnit load_memory(const std::filesystem::path& dir);

}  // namespace tirc

#endif
