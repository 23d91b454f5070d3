#pragma once

#include <vector>

#include "ssdso/oracle.hpp"

namespace ssdso {

struct FtEntry {
    Vertex target = kNoVertex;
    Vertex depth = 0;
    Dist dist = kInf;
    Vertex pred = kNoVertex;

    friend bool operator==(const FtEntry&, const FtEntry&) = default;
};

/*
 * Per-pivot segmentation of the far-II records of the targets anchored at
 * the pivot. Records are sorted by depth and packed into depth segments of
 * Theta(h) records, h the number of targets. Each segment also carries, for
 * every target with a record above the segment, that target's latest such
 * record, so one segment answers every failure inside its depth range.
 */
struct FtTreeStore {
    std::vector<std::size_t> target_offsets;  // per pivot slot + 1
    std::vector<Vertex> targets;

    std::vector<std::size_t> segment_offsets; // per pivot slot + 1, into segment arrays
    std::vector<Vertex> segment_start;        // first depth covered
    std::vector<std::size_t> entry_offsets;   // per segment + 1
    std::vector<FtEntry> entries;             // sorted by (depth, target)
    std::vector<std::size_t> carry_offsets;   // per segment + 1
    std::vector<FtEntry> carried;

    std::vector<std::size_t> depth_offsets;   // per pivot slot + 1, depth(x) entries when it has segments
    std::vector<Vertex> depth_segment;        // failure depth k at depth_offsets[slot] + k - 1, local segment index

    std::size_t num_segments(std::size_t slot) const noexcept {
        return segment_offsets[slot + 1] - segment_offsets[slot];
    }
};

/// Requires a predecessor-augmented edge-failure oracle.
FtTreeStore build_ft_tree_store(const Oracle& o);

/// Parent of every vertex in a shortest path tree of G - e, kNoVertex for s
/// and for vertices cut off from s. A non-tree edge yields the original tree.
std::vector<Vertex> report_tree(const FtTreeStore& ft, const Oracle& o, EdgeId e);

}  // namespace ssdso
