#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssdso/ft_tree.hpp"
#include "ssdso/graph.hpp"
#include "ssdso/grouped.hpp"
#include "ssdso/oracle.hpp"

namespace ssdso {

struct GraphFile {
    Graph graph;
    Vertex source = 0;
};

/// Text format: header `n m M s`, then m lines `u v w`; `#` lines and blank
/// lines are skipped. Errors name the offending line.
GraphFile parse_graph(std::string_view text);
std::string write_graph(const Graph& g, Vertex source);
GraphFile read_graph_file(const std::string& path);
void write_graph_file(const std::string& path, const Graph& g, Vertex source);

inline constexpr std::uint16_t kBlobVersion = 1;

class BlobError : public InputError {
public:
    enum class Kind { bad_magic, version_mismatch, truncated, corrupt };
    BlobError(Kind kind, const std::string& what) : InputError(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// A deserialized blob: either a standard oracle (optionally with FT trees) or a grouped one.
struct StoredOracle {
    bool grouped = false;
    Oracle oracle;
    GroupedOracle grouped_oracle;
    std::optional<FtTreeStore> ft;

    const Oracle& base() const noexcept { return grouped ? grouped_oracle.base : oracle; }
};

std::vector<std::uint8_t> serialize_oracle(const Oracle& o, const FtTreeStore* ft = nullptr);
std::vector<std::uint8_t> serialize_oracle(const GroupedOracle& o);
/// Throws BlobError.
StoredOracle deserialize_oracle(std::span<const std::uint8_t> blob);

/// 64-bit words after the fixed header (section lengths included).
std::size_t payload_words(std::span<const std::uint8_t> blob);

std::vector<std::uint8_t> read_binary_file(const std::string& path);
void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes);

}  // namespace ssdso
