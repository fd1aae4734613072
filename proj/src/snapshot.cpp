#include "act/snapshot.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "act/error.hpp"

namespace act {
namespace {

constexpr char kMagic[8] = {'A', 'C', 'T', 'S', 'N', 'A', 'P', 'B'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint8_t kKindAct = 1;
constexpr std::uint8_t kKindCt = 2;

struct Writer {
    std::string buf;

    void u8(std::uint8_t v) { buf.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) buf.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
    void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

    void rect(const Rect& r) {
        i32(r.x);
        i32(r.y);
        i32(r.w);
        i32(r.h);
    }
    void doubles(const std::vector<double>& v) {
        u64(v.size());
        for (double d : v) f64(d);
    }
    void ints(const std::vector<int>& v) {
        u64(v.size());
        for (int d : v) i32(d);
    }
    void matrix(const RowMatrix& m) {
        i32(m.rows);
        i32(m.cols);
        doubles(m.data);
    }
};

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) {
        if (buf.size() - pos < n) throw DataError("snapshot truncated");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        need(8);
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(buf[pos++])) << (8 * i);
        return v;
    }
    std::int32_t i32() { return static_cast<std::int32_t>(u32()); }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    double f64() { return std::bit_cast<double>(u64()); }

    std::size_t count(std::size_t elem_size) {
        const std::uint64_t n = u64();
        if (n > (buf.size() - pos) / elem_size) throw DataError("snapshot truncated");
        return static_cast<std::size_t>(n);
    }
    Rect rect() {
        Rect r;
        r.x = i32();
        r.y = i32();
        r.w = i32();
        r.h = i32();
        return r;
    }
    std::vector<double> doubles() {
        std::vector<double> v(count(8));
        for (double& d : v) d = f64();
        return v;
    }
    std::vector<int> ints() {
        std::vector<int> v(count(4));
        for (int& d : v) d = i32();
        return v;
    }
    RowMatrix matrix() {
        RowMatrix m;
        m.rows = i32();
        m.cols = i32();
        m.data = doubles();
        if (m.data.size() != static_cast<std::size_t>(m.rows) * m.cols) {
            throw DataError("snapshot matrix shape mismatch");
        }
        return m;
    }
};

void write_header(Writer& w, std::uint8_t kind) {
    w.buf.append(kMagic, sizeof kMagic);
    w.u32(kVersion);
    w.u8(kind);
}

Reader open_snapshot(const std::string& content, std::uint8_t kind) {
    Reader r{content};
    r.need(sizeof kMagic);
    if (std::memcmp(content.data(), kMagic, sizeof kMagic) != 0) {
        throw DataError("not a snapshot file (bad magic)");
    }
    r.pos = sizeof kMagic;
    const std::uint32_t version = r.u32();
    if (version != kVersion) {
        throw DataError("unsupported snapshot version " + std::to_string(version));
    }
    const std::uint8_t got = r.u8();
    if (got != kind) throw DataError("snapshot holds a different tracker kind");
    return r;
}

void write_file(const std::string& buf, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write snapshot: " + path);
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
    if (!out) throw DataError("short write on snapshot: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open snapshot: " + path);
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return content;
}

void put_tracker_config(Writer& w, const TrackerConfig& c) {
    w.i32(c.bag_count);
    w.i32(c.templates_per_bag);
    w.i32(c.selected_per_bag);
    w.f64(c.confidence_threshold);
    w.f64(c.template_threshold);
    w.i32(c.search_radius);
    w.i32(c.positive_radius);
    w.i32(c.negative_inner);
    w.i32(c.negative_outer);
    w.i32(c.positive_count);
    w.i32(c.negative_count);
    w.f64(c.template_ratio);
    w.f64(c.learning_rate);
    w.i32(c.selection_period);
    w.u64(c.seed);
}

TrackerConfig get_tracker_config(Reader& r) {
    TrackerConfig c;
    c.bag_count = r.i32();
    c.templates_per_bag = r.i32();
    c.selected_per_bag = r.i32();
    c.confidence_threshold = r.f64();
    c.template_threshold = r.f64();
    c.search_radius = r.i32();
    c.positive_radius = r.i32();
    c.negative_inner = r.i32();
    c.negative_outer = r.i32();
    c.positive_count = r.i32();
    c.negative_count = r.i32();
    c.template_ratio = r.f64();
    c.learning_rate = r.f64();
    c.selection_period = r.i32();
    c.seed = r.u64();
    return c;
}

void put_ct_config(Writer& w, const CtConfig& c) {
    w.i32(c.feature_count);
    w.i32(c.search_radius);
    w.i32(c.positive_radius);
    w.i32(c.negative_inner);
    w.i32(c.negative_outer);
    w.i32(c.negative_count);
    w.f64(c.learning_rate);
    w.u64(c.seed);
}

CtConfig get_ct_config(Reader& r) {
    CtConfig c;
    c.feature_count = r.i32();
    c.search_radius = r.i32();
    c.positive_radius = r.i32();
    c.negative_inner = r.i32();
    c.negative_outer = r.i32();
    c.negative_count = r.i32();
    c.learning_rate = r.f64();
    c.seed = r.u64();
    return c;
}

void put_params(Writer& w, const ClassifierParams& p) {
    w.doubles(p.mu_pos);
    w.doubles(p.sigma_pos);
    w.doubles(p.mu_neg);
    w.doubles(p.sigma_neg);
}

ClassifierParams get_params(Reader& r) {
    ClassifierParams p;
    p.mu_pos = r.doubles();
    p.sigma_pos = r.doubles();
    p.mu_neg = r.doubles();
    p.sigma_neg = r.doubles();
    return p;
}

void put_rng(Writer& w, const RngState& s) {
    w.u64(s.state);
    w.f64(s.spare);
    w.u8(s.has_spare ? 1 : 0);
}

RngState get_rng(Reader& r) {
    RngState s;
    s.state = r.u64();
    s.spare = r.f64();
    s.has_spare = r.u8() != 0;
    return s;
}

}  // namespace

void save_act_snapshot(const ActState& s, const std::string& path) {
    Writer w;
    write_header(w, kKindAct);
    put_tracker_config(w, s.config);
    w.i32(s.frame_w);
    w.i32(s.frame_h);
    w.rect(s.box);
    w.u64(s.history.size());
    for (const Vec2& v : s.history) {
        w.f64(v.x);
        w.f64(v.y);
    }
    w.u64(s.bags.size());
    for (const TemplateBag& b : s.bags) {
        w.i32(b.tpl_w);
        w.i32(b.tpl_h);
        w.ints(b.dx);
        w.ints(b.dy);
    }
    w.u64(s.projection.size());
    for (const ProjectionRow& p : s.projection) {
        w.f64(p.scale);
        w.u64(p.signs.size());
        for (std::int8_t sign : p.signs) w.u8(static_cast<std::uint8_t>(sign));
    }
    w.u64(s.centers.size());
    for (const BagCenters& c : s.centers) {
        w.i32(c.tpl_w);
        w.i32(c.tpl_h);
        w.matrix(c.pos_raw);
        w.matrix(c.neg_raw);
        w.matrix(c.pos_unit);
        w.matrix(c.neg_unit);
    }
    w.u64(s.selected.size());
    for (const std::vector<int>& sel : s.selected) w.ints(sel);
    put_params(w, s.params);
    w.f64(s.last_confidence);
    w.i64(s.frames_tracked);
    w.i64(s.updates_done);
    put_rng(w, s.rng);
    write_file(w.buf, path);
}

ActState load_act_snapshot(const std::string& path) {
    const std::string content = read_file(path);
    Reader r = open_snapshot(content, kKindAct);
    ActState s;
    s.config = get_tracker_config(r);
    s.frame_w = r.i32();
    s.frame_h = r.i32();
    s.box = r.rect();
    s.history.resize(r.count(16));
    for (Vec2& v : s.history) {
        v.x = r.f64();
        v.y = r.f64();
    }
    s.bags.resize(r.count(8));
    for (TemplateBag& b : s.bags) {
        b.tpl_w = r.i32();
        b.tpl_h = r.i32();
        b.dx = r.ints();
        b.dy = r.ints();
    }
    s.projection.resize(r.count(8));
    for (ProjectionRow& p : s.projection) {
        p.scale = r.f64();
        p.signs.resize(r.count(1));
        for (std::int8_t& sign : p.signs) sign = static_cast<std::int8_t>(r.u8());
    }
    s.centers.resize(r.count(8));
    for (BagCenters& c : s.centers) {
        c.tpl_w = r.i32();
        c.tpl_h = r.i32();
        c.pos_raw = r.matrix();
        c.neg_raw = r.matrix();
        c.pos_unit = r.matrix();
        c.neg_unit = r.matrix();
    }
    s.selected.resize(r.count(8));
    for (std::vector<int>& sel : s.selected) sel = r.ints();
    s.params = get_params(r);
    s.last_confidence = r.f64();
    s.frames_tracked = r.i64();
    s.updates_done = r.i64();
    s.rng = get_rng(r);
    if (r.pos != content.size()) throw DataError("snapshot has trailing bytes");
    return s;
}

void save_ct_snapshot(const CtTrackerState& s, const std::string& path) {
    Writer w;
    write_header(w, kKindCt);
    put_ct_config(w, s.config);
    w.i32(s.frame_w);
    w.i32(s.frame_h);
    w.rect(s.box);
    w.i32(s.matrix.feature_count);
    w.i32(s.matrix.target_w);
    w.i32(s.matrix.target_h);
    w.u64(s.matrix.rows.size());
    for (const auto& row : s.matrix.rows) {
        w.u64(row.size());
        for (const CtEntry& e : row) {
            w.i32(e.dx);
            w.i32(e.dy);
            w.i32(e.tpl_w);
            w.i32(e.tpl_h);
            w.f64(e.weight);
        }
    }
    put_params(w, s.params);
    w.i64(s.frames_tracked);
    put_rng(w, s.rng);
    write_file(w.buf, path);
}

CtTrackerState load_ct_snapshot(const std::string& path) {
    const std::string content = read_file(path);
    Reader r = open_snapshot(content, kKindCt);
    CtTrackerState s;
    s.config = get_ct_config(r);
    s.frame_w = r.i32();
    s.frame_h = r.i32();
    s.box = r.rect();
    s.matrix.feature_count = r.i32();
    s.matrix.target_w = r.i32();
    s.matrix.target_h = r.i32();
    s.matrix.rows.resize(r.count(8));
    for (auto& row : s.matrix.rows) {
        row.resize(r.count(24));
        for (CtEntry& e : row) {
            e.dx = r.i32();
            e.dy = r.i32();
            e.tpl_w = r.i32();
            e.tpl_h = r.i32();
            e.weight = r.f64();
        }
    }
    s.params = get_params(r);
    s.frames_tracked = r.i64();
    s.rng = get_rng(r);
    if (r.pos != content.size()) throw DataError("snapshot has trailing bytes");
    return s;
}

}  // namespace act
