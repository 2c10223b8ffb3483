#include "tirc/memory_io.hpp"

#include <fstream>

#include <json.hpp>

#include "tirc/imageio.hpp"

namespace tirc {

void save_memory(const std::filesystem::path& dir, const MemoryUnit& mem) {
    std::filesystem::create_directories(dir);
    nlohmann::json index;
    index["capacity_target"] = mem.capacity_target();
    index["ready"] = mem.ready();
    index["c_ss"] = mem.small_sample_set();
    nlohmann::json features = nlohmann::json::object();
    for (const auto& id : mem.ids()) {
        write_mask_png(dir / (id + ".png"), mem.mask(id));
        features[id] = mem.feature(id).values;
    }
    index["features"] = features;
    std::ofstream f(dir / "index.json");
    f << index.dump(2) << "\n";
}

MemoryUnit load_memory(const std::filesystem::path& dir) {
    std::ifstream f(dir / "index.json");
    if (!f) throw std::runtime_error("missing " + (dir / "index.json").string());
    nlohmann::json index;
    f >> index;
    MemoryUnit mem(index.at("capacity_target").get<size_t>(),
                   index.at("c_ss").get<std::vector<int32_t>>());
    for (const auto& [id, _] : index.at("features").items())
        mem.store(id, read_mask_png(dir / (id + ".png")));
    return mem;
}

}  // namespace tirc
