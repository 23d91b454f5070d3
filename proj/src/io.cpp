#include "ssdso/io.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>

namespace ssdso {

namespace {

constexpr char kMagic[6] = {'S', 'S', 'D', 'S', 'O', '1'};
constexpr std::uint64_t kNone = ~std::uint64_t{0};

enum : std::uint8_t { kFlagPaths = 1, kFlagFt = 2, kFlagDense = 4 };

std::vector<std::string_view> tokens(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
        if (j > i) out.push_back(line.substr(i, j - i));
        i = j;
    }
    return out;
}

std::uint64_t number(std::string_view tok, std::size_t line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
        throw InputError("line " + std::to_string(line) + ": expected a non-negative integer, got '" +
                         std::string(tok) + "'");
    return v;
}

// ---- blob writing

class Writer {
public:
    void bytes(const void* p, std::size_t len) {
        const auto* b = static_cast<const std::uint8_t*>(p);
        out.insert(out.end(), b, b + len);
    }
    void u8(std::uint8_t v) { out.push_back(v); }
    void u16(std::uint16_t v) {
        for (int i = 0; i < 2; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    template <class T, class F>
    void section(const std::vector<T>& xs, F encode) {
        u64(xs.size());
        for (const T& x : xs) encode(x);
    }
    template <class T>
    void words(const std::vector<T>& xs) {
        section(xs, [&](const T& x) { u64(static_cast<std::uint64_t>(x)); });
    }
    void ids(std::span<const Vertex> xs) {
        u64(xs.size());
        for (Vertex x : xs) u64(x == kNoVertex ? kNone : x);
    }
    void edge_ids(std::span<const EdgeId> xs) {
        u64(xs.size());
        for (EdgeId x : xs) u64(x == kNoEdge ? kNone : x);
    }

    std::vector<std::uint8_t> out;
};

void write_header(Writer& w, const Oracle& o, std::uint8_t mode, std::uint8_t flags) {
    w.bytes(kMagic, sizeof kMagic);
    w.u16(kBlobVersion);
    w.u8(mode);
    w.u64(o.n);
    w.u64(o.m);
    w.u64(o.max_weight);
    w.u64(o.source);
    w.u8(flags);
}

void write_base(Writer& w, const Oracle& o) {
    w.words(std::vector<std::uint64_t>{o.block});
    w.ids(o.tree.parents());
    w.edge_ids(o.tree.parent_edges());
    w.words(std::vector<Dist>(o.tree.distances().begin(), o.tree.distances().end()));
    w.ids(o.pivots.pivots);
    w.words(o.near_offsets);
    w.words(o.near_dist);
    if (o.has_paths) w.ids(o.near_pred);
    w.words(o.far_offsets);
    w.words(o.far_dist);
    w.words(o.break_offsets);
    w.section(o.breaks, [&](const BreakRecord& b) {
        w.u64(b.key);
        w.u64(b.dist);
        w.u64((std::uint64_t{b.depth} << 32) | b.pred);
    });
}

// ---- blob reading

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

    void need(std::size_t len, const char* what) {
        if (in_.size() - pos_ < len)
            throw BlobError(BlobError::Kind::truncated, std::string("blob truncated in ") + what);
    }
    std::uint8_t u8(const char* what) {
        need(1, what);
        return in_[pos_++];
    }
    std::uint16_t u16(const char* what) {
        need(2, what);
        std::uint16_t v = static_cast<std::uint16_t>(in_[pos_] | (in_[pos_ + 1] << 8));
        pos_ += 2;
        return v;
    }
    std::uint64_t u64(const char* what) {
        need(8, what);
        std::uint64_t v = 0;
        for (int i = 7; i >= 0; --i) v = (v << 8) | in_[pos_ + static_cast<std::size_t>(i)];
        pos_ += 8;
        return v;
    }
    std::vector<std::uint64_t> words(const char* what) {
        const std::uint64_t count = u64(what);
        if (count > (in_.size() - pos_) / 8)
            throw BlobError(BlobError::Kind::truncated, std::string("blob truncated in section ") + what);
        std::vector<std::uint64_t> out(count);
        for (auto& v : out) v = u64(what);
        payload_ += count;
        return out;
    }
    std::vector<Vertex> ids(const char* what, std::uint64_t limit) {
        std::vector<Vertex> out;
        for (std::uint64_t v : words(what)) {
            if (v != kNone && v >= limit) corrupt(what);
            out.push_back(v == kNone ? kNoVertex : static_cast<Vertex>(v));
        }
        return out;
    }
    template <class T>
    std::vector<T> narrow(const char* what) {
        std::vector<T> out;
        for (std::uint64_t v : words(what)) out.push_back(static_cast<T>(v));
        return out;
    }
    void bytes(void* out, std::size_t len, const char* what) {
        need(len, what);
        std::memcpy(out, in_.data() + pos_, len);
        pos_ += len;
    }
    bool done() const noexcept { return pos_ == in_.size(); }
    std::size_t payload() const noexcept { return payload_; }

    [[noreturn]] static void corrupt(const std::string& what) {
        throw BlobError(BlobError::Kind::corrupt, "blob section " + what + " is inconsistent");
    }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
    std::size_t payload_ = 0;
};

struct Header {
    std::uint8_t mode = 0;
    std::uint64_t n = 0, m = 0, M = 1, s = 0;
    std::uint8_t flags = 0;
};

Header read_header(Reader& r) {
    char magic[6];
    r.bytes(magic, sizeof magic, "header");
    if (std::memcmp(magic, kMagic, sizeof magic) != 0)
        throw BlobError(BlobError::Kind::bad_magic, "not an oracle blob (bad magic)");
    const std::uint16_t version = r.u16("header");
    if (version != kBlobVersion)
        throw BlobError(BlobError::Kind::version_mismatch,
                        "unsupported blob version " + std::to_string(version) + " (expected " +
                            std::to_string(kBlobVersion) + ")");
    Header h;
    h.mode = r.u8("header");
    h.n = r.u64("header");
    h.m = r.u64("header");
    h.M = r.u64("header");
    h.s = r.u64("header");
    h.flags = r.u8("header");
    if (h.mode > 3) Reader::corrupt("header mode");
    if (h.n == 0 || h.n >= kNoVertex || h.m >= kNoEdge || h.s >= h.n || h.M == 0) Reader::corrupt("header");
    if (h.flags & ~(kFlagPaths | kFlagFt | kFlagDense)) Reader::corrupt("header flags");
    if ((h.mode >= 2) && (h.flags & (kFlagPaths | kFlagFt))) Reader::corrupt("header flags");
    return h;
}

void check_offsets(const std::vector<std::size_t>& off, std::size_t entries, std::size_t total, const char* what) {
    if (off.size() != entries + 1 || off.front() != 0 || off.back() != total) Reader::corrupt(what);
    for (std::size_t i = 0; i + 1 < off.size(); ++i)
        if (off[i] > off[i + 1]) Reader::corrupt(what);
}

Oracle read_base(Reader& r, const Header& h, FailureMode mode) {
    Oracle o;
    o.mode = mode;
    o.n = h.n;
    o.m = h.m;
    o.max_weight = h.M;
    o.source = static_cast<Vertex>(h.s);
    o.dense = h.flags & kFlagDense;
    o.has_paths = h.flags & kFlagPaths;
    const std::size_t n = h.n;

    const auto params = r.words("parameters");
    if (params.size() != 1 || params[0] < 1 || params[0] > n) Reader::corrupt("parameters");
    o.block = params[0];

    auto parent = r.ids("tree parents", n);
    std::vector<EdgeId> parent_edge;
    for (std::uint64_t v : r.words("tree edges")) {
        if (v != kNone && v >= h.m) Reader::corrupt("tree edges");
        parent_edge.push_back(v == kNone ? kNoEdge : static_cast<EdgeId>(v));
    }
    auto dist = r.narrow<Dist>("tree distances");
    if (parent.size() != n || parent_edge.size() != n || dist.size() != n) Reader::corrupt("tree");
    if (dist[o.source] != 0 || parent[o.source] != kNoVertex) Reader::corrupt("tree");
    for (Vertex v = 0; v < n; ++v) {
        if (v == o.source) continue;
        const bool has_parent = parent[v] != kNoVertex;
        if (has_parent != (dist[v] != kInf) || has_parent != (parent_edge[v] != kNoEdge)) Reader::corrupt("tree");
        // strictly increasing distances keep the parent pointers acyclic
        if (has_parent && !(dist[parent[v]] < dist[v])) Reader::corrupt("tree");
    }
    o.tree = ShortestPathTree(o.source, std::move(parent), std::move(parent_edge), std::move(dist));

    o.pivots.block = o.block;
    o.pivots.pivots = r.ids("pivots", n);
    if (o.pivots.pivots.empty() || o.pivots.pivots.back() != o.source) Reader::corrupt("pivots");
    std::vector<char> is_pivot(n, 0);
    for (Vertex x : o.pivots.pivots) {
        if (x == kNoVertex || is_pivot[x] || !o.tree.reachable(x)) Reader::corrupt("pivots");
        is_pivot[x] = 1;
    }
    o.pivots.assigned.assign(n, kNoVertex);
    for (Vertex v : o.tree.lca().preorder())
        o.pivots.assigned[v] = is_pivot[v] ? v : o.pivots.assigned[o.tree.parent(v)];
    o.rebuild_indexes();

    o.near_offsets = r.narrow<std::size_t>("near offsets");
    o.near_dist = r.narrow<Dist>("near rows");
    check_offsets(o.near_offsets, n, o.near_dist.size(), "near offsets");
    for (Vertex t = 0; t < n; ++t) {
        std::size_t len = 0;
        if (o.tree.reachable(t)) {
            const std::size_t row = SsrpTable::row_length(mode, o.tree, t);
            const std::size_t top = o.tree.depth(o.anchor[t]);
            len = row > top ? row - top : 0;
        }
        if (o.near_offsets[t + 1] - o.near_offsets[t] != len) Reader::corrupt("near rows");
    }
    if (o.has_paths) {
        o.near_pred = r.ids("near predecessors", n);
        if (o.near_pred.size() != o.near_dist.size()) Reader::corrupt("near predecessors");
    }

    o.far_offsets = r.narrow<std::size_t>("far offsets");
    o.far_dist = r.narrow<Dist>("far rows");
    check_offsets(o.far_offsets, o.pivots.pivots.size(), o.far_dist.size(), "far offsets");
    for (std::size_t i = 0; i < o.pivots.pivots.size(); ++i)
        if (o.far_offsets[i + 1] - o.far_offsets[i] != SsrpTable::row_length(mode, o.tree, o.pivots.pivots[i]))
            Reader::corrupt("far rows");

    o.break_offsets = r.narrow<std::size_t>("break offsets");
    const std::uint64_t count = r.u64("break records");
    r.need(count > std::uint64_t{1} << 40 ? ~std::size_t{0} : static_cast<std::size_t>(count) * 24, "break records");
    o.breaks.resize(count);
    for (BreakRecord& b : o.breaks) {
        b.key = r.u64("break records");
        b.dist = r.u64("break records");
        const std::uint64_t packed = r.u64("break records");
        b.depth = static_cast<Vertex>(packed >> 32);
        b.pred = static_cast<Vertex>(packed & 0xffffffffu);
        if (b.pred != kNoVertex && b.pred >= n) Reader::corrupt("break records");
    }
    check_offsets(o.break_offsets, n, o.breaks.size(), "break offsets");
    for (Vertex t = 0; t < n; ++t)
        for (const BreakRecord& b : o.break_points(t))
            if (b.depth < 1 || b.depth > o.tree.depth(o.anchor[t])) Reader::corrupt("break records");
    return o;
}

}  // namespace

// ---- graphs

GraphFile parse_graph(std::string_view text) {
    std::size_t line_no = 0, pos = 0;
    bool header = false;
    std::uint64_t n = 0, m = 0, M = 1, s = 0;
    std::vector<Edge> edges;
    std::set<std::pair<Vertex, Vertex>> seen;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++line_no;
        const auto tok = tokens(line);
        if (tok.empty() || tok[0].front() == '#') {
            if (end == text.size()) break;
            continue;
        }
        const std::string where = "line " + std::to_string(line_no);
        if (!header) {
            if (tok.size() != 4) throw InputError(where + ": header must be 'n m M s'");
            n = number(tok[0], line_no);
            m = number(tok[1], line_no);
            M = number(tok[2], line_no);
            s = number(tok[3], line_no);
            if (n == 0 || n >= kNoVertex) throw InputError(where + ": vertex count out of range");
            if (M < 1) throw InputError(where + ": max weight must be at least 1");
            if (s >= n) throw InputError(where + ": source out of range");
            header = true;
        } else {
            if (tok.size() != 3) throw InputError(where + ": edge line must be 'u v w'");
            if (edges.size() == m) throw InputError(where + ": more edge lines than the header declares");
            const std::uint64_t u = number(tok[0], line_no), v = number(tok[1], line_no), w = number(tok[2], line_no);
            if (u >= n || v >= n) throw InputError(where + ": vertex id out of range");
            if (u == v) throw InputError(where + ": self-loop");
            if (w < 1 || w > M)
                throw InputError(where + ": weight " + std::to_string(w) + " outside [1, " + std::to_string(M) + "]");
            const std::pair<Vertex, Vertex> key{static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v))};
            if (!seen.insert(key).second) throw InputError(where + ": duplicate edge");
            edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), w});
        }
        if (end == text.size()) break;
    }
    if (!header) throw InputError("line " + std::to_string(line_no) + ": missing header");
    if (edges.size() != m)
        throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(m) + " edges, found " +
                         std::to_string(edges.size()));
    return {Graph(n, M, std::move(edges)), static_cast<Vertex>(s)};
}

std::string write_graph(const Graph& g, Vertex source) {
    std::ostringstream out;
    out << g.num_vertices() << ' ' << g.num_edges() << ' ' << g.max_weight() << ' ' << source << '\n';
    for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << ' ' << e.w << '\n';
    return out.str();
}

GraphFile read_graph_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open graph file " + path);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return parse_graph(text);
}

void write_graph_file(const std::string& path, const Graph& g, Vertex source) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write graph file " + path);
    out << write_graph(g, source);
}

// ---- oracle blobs

std::vector<std::uint8_t> serialize_oracle(const Oracle& o, const FtTreeStore* ft) {
    Writer w;
    std::uint8_t flags = 0;
    if (o.has_paths) flags |= kFlagPaths;
    if (ft) flags |= kFlagFt;
    if (o.dense) flags |= kFlagDense;
    if (ft && (!o.has_paths || o.mode != FailureMode::edge))
        throw ContractError("fault-tolerant trees need an edge-failure oracle with predecessors");
    write_header(w, o, o.mode == FailureMode::edge ? 0 : 1, flags);
    write_base(w, o);
    if (ft) {
        w.words(ft->target_offsets);
        w.ids(ft->targets);
        w.words(ft->segment_offsets);
        w.ids(ft->segment_start);
        w.words(ft->entry_offsets);
        auto entry = [&](const FtEntry& e) {
            w.u64((std::uint64_t{e.target} << 32) | e.depth);
            w.u64(e.dist);
            w.u64(e.pred == kNoVertex ? kNone : e.pred);
        };
        w.section(ft->entries, entry);
        w.words(ft->carry_offsets);
        w.section(ft->carried, entry);
        w.words(ft->depth_offsets);
        w.ids(ft->depth_segment);
    }
    return std::move(w.out);
}

std::vector<std::uint8_t> serialize_oracle(const GroupedOracle& go) {
    Writer w;
    const Oracle& o = go.base;
    write_header(w, o, o.mode == FailureMode::edge ? 2 : 3, o.dense ? kFlagDense : 0);
    Oracle plain = o;
    plain.has_paths = false;
    write_base(w, plain);
    w.ids(go.group_of);
    w.ids(go.slot_of);
    w.ids(go.group_anchor);
    w.ids(go.group_size);
    w.words(go.union_count);
    w.words(go.value_offsets);
    w.words(go.values);
    w.words(go.pointer_offsets);
    w.ids(go.pointers);
    return std::move(w.out);
}

namespace {

// ft entries are three words; counts are in records
std::vector<FtEntry> read_entries(Reader& r, std::uint64_t n, const char* what) {
    const std::uint64_t count = r.u64(what);
    r.need(count > std::uint64_t{1} << 40 ? ~std::size_t{0} : static_cast<std::size_t>(count) * 24, what);
    std::vector<FtEntry> out;
    for (std::uint64_t i = 0; i < count; ++i) {
        const std::uint64_t a = r.u64(what), d = r.u64(what), p = r.u64(what);
        FtEntry e;
        e.target = static_cast<Vertex>(a >> 32);
        e.depth = static_cast<Vertex>(a & 0xffffffffu);
        e.dist = d;
        e.pred = p == kNone ? kNoVertex : static_cast<Vertex>(p);
        if (e.target >= n || (e.pred != kNoVertex && e.pred >= n)) Reader::corrupt(what);
        out.push_back(e);
    }
    return out;
}

}  // namespace

StoredOracle deserialize_oracle(std::span<const std::uint8_t> blob) {
    Reader r(blob);
    const Header h = read_header(r);
    StoredOracle out;
    const FailureMode mode = (h.mode == 0 || h.mode == 2) ? FailureMode::edge : FailureMode::vertex;
    if (h.mode >= 2) {
        out.grouped = true;
        GroupedOracle& go = out.grouped_oracle;
        go.base = read_base(r, h, mode);
        const std::size_t n = h.n;
        go.group_of = r.ids("group of", n);
        go.slot_of = r.ids("slot of", n);
        go.group_anchor = r.ids("group anchors", n);
        go.group_size = r.ids("group sizes", kNone);
        go.union_count = r.narrow<std::size_t>("union counts");
        go.value_offsets = r.narrow<std::size_t>("value offsets");
        go.values = r.narrow<Dist>("values");
        go.pointer_offsets = r.narrow<std::size_t>("pointer offsets");
        go.pointers = r.ids("pointers", kNone);
        const std::size_t groups = go.group_anchor.size();
        if (go.group_of.size() != n || go.slot_of.size() != n || go.group_size.size() != groups ||
            go.union_count.size() != groups)
            Reader::corrupt("groups");
        check_offsets(go.value_offsets, groups, go.values.size(), "value offsets");
        check_offsets(go.pointer_offsets, groups, go.pointers.size(), "pointer offsets");
        for (std::size_t gi = 0; gi < groups; ++gi) {
            const Vertex x = go.group_anchor[gi];
            if (x == kNoVertex || go.base.far_slot[x] == kNoVertex) Reader::corrupt("group anchors");
            if (go.value_offsets[gi + 1] - go.value_offsets[gi] != go.union_count[gi] * go.group_size[gi])
                Reader::corrupt("values");
            if (go.pointer_offsets[gi + 1] - go.pointer_offsets[gi] != go.base.tree.depth(x))
                Reader::corrupt("pointers");
            for (std::size_t i = go.pointer_offsets[gi]; i < go.pointer_offsets[gi + 1]; ++i)
                if (go.pointers[i] != kNoVertex && go.pointers[i] >= go.union_count[gi]) Reader::corrupt("pointers");
        }
        for (Vertex t = 0; t < n; ++t) {
            const Vertex gi = go.group_of[t];
            if (gi == kNoVertex) {
                if (t != go.base.source && go.base.tree.reachable(t)) Reader::corrupt("group of");
                continue;
            }
            if (gi >= groups || go.group_anchor[gi] != go.base.anchor[t] || go.slot_of[t] >= go.group_size[gi])
                Reader::corrupt("group of");
        }
    } else {
        out.oracle = read_base(r, h, mode);
        if (h.flags & kFlagFt) {
            if (mode != FailureMode::edge || !out.oracle.has_paths) Reader::corrupt("header flags");
            FtTreeStore ft;
            const std::size_t n = h.n;
            const std::size_t slots = out.oracle.pivots.pivots.size();
            ft.target_offsets = r.narrow<std::size_t>("ft target offsets");
            ft.targets = r.ids("ft targets", n);
            ft.segment_offsets = r.narrow<std::size_t>("ft segment offsets");
            ft.segment_start = r.ids("ft segment starts", kNone);
            ft.entry_offsets = r.narrow<std::size_t>("ft entry offsets");
            ft.entries = read_entries(r, n, "ft entries");
            ft.carry_offsets = r.narrow<std::size_t>("ft carry offsets");
            ft.carried = read_entries(r, n, "ft carried entries");
            ft.depth_offsets = r.narrow<std::size_t>("ft depth offsets");
            ft.depth_segment = r.ids("ft depth segments", kNone);
            check_offsets(ft.target_offsets, slots, ft.targets.size(), "ft target offsets");
            check_offsets(ft.segment_offsets, slots, ft.segment_start.size(), "ft segment offsets");
            check_offsets(ft.entry_offsets, ft.segment_start.size(), ft.entries.size(), "ft entry offsets");
            check_offsets(ft.carry_offsets, ft.segment_start.size(), ft.carried.size(), "ft carry offsets");
            check_offsets(ft.depth_offsets, slots, ft.depth_segment.size(), "ft depth offsets");
            for (std::size_t slot = 0; slot < slots; ++slot) {
                const std::size_t segs = ft.num_segments(slot);
                const std::size_t len = ft.depth_offsets[slot + 1] - ft.depth_offsets[slot];
                if (segs > 0 && len != out.oracle.tree.depth(out.oracle.pivots.pivots[slot]))
                    Reader::corrupt("ft depth segments");
                if (segs == 0 && len != 0) Reader::corrupt("ft depth segments");
                for (std::size_t i = ft.depth_offsets[slot]; i < ft.depth_offsets[slot + 1]; ++i)
                    if (ft.depth_segment[i] >= segs) Reader::corrupt("ft depth segments");
            }
            out.ft = std::move(ft);
        }
    }
    if (!r.done()) Reader::corrupt("trailer (unexpected bytes after the last section)");
    return out;
}

std::size_t payload_words(std::span<const std::uint8_t> blob) {
    deserialize_oracle(blob);  // validates
    constexpr std::size_t header = sizeof kMagic + 2 + 1 + 4 * 8 + 1;
    return (blob.size() - header) / 8;
}

std::vector<std::uint8_t> read_binary_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open file " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_binary_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InputError("cannot write file " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

}  // namespace ssdso
