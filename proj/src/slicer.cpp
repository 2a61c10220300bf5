#include "dynembed/slicer.hpp"

#include <algorithm>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

namespace fs = std::filesystem;

namespace dynembed {

namespace {

bool is_comment_or_blank(const std::string& line) {
    for (char c : line) {
        if (c == ' ' || c == '\t' || c == '\r') continue;
        return c == '#' || c == '%';
    }
    return true;
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
        if (i > start) fields.emplace_back(line.substr(start, i - start));
    }
    return fields;
}

std::int64_t parse_timestamp(const std::string& token, std::size_t line_no) {
    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size())
        throw ParseError("line " + std::to_string(line_no) + ": non-numeric timestamp '" + token +
                         "'");
    return value;
}

std::int64_t min_positive_gap(const std::vector<EdgeEvent>& events) {
    std::int64_t gap = 0;
    for (std::size_t i = 1; i < events.size(); ++i) {
        const std::int64_t d = events[i].timestamp - events[i - 1].timestamp;
        if (d > 0 && (gap == 0 || d < gap)) gap = d;
    }
    return gap;
}

}  // namespace

std::vector<EdgeEvent> parse_edge_stream(std::istream& input) {
    std::vector<EdgeEvent> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(input, line)) {
        ++line_no;
        if (is_comment_or_blank(line)) continue;
        auto fields = split_fields(line);
        if (fields.size() != 3)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'u v timestamp', got " +
                             std::to_string(fields.size()) + " field(s)");
        events.push_back({std::move(fields[0]), std::move(fields[1]),
                          parse_timestamp(fields[2], line_no)});
    }
    std::stable_sort(events.begin(), events.end(),
                     [](const EdgeEvent& a, const EdgeEvent& b) { return a.timestamp < b.timestamp; });
    return events;
}

std::vector<EdgeEvent> parse_edge_stream_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open edge stream '" + path + "'");
    return parse_edge_stream(in);
}

SnapshotSequence slice(const std::vector<EdgeEvent>& events, const SliceScheme& scheme) {
    if (events.empty()) throw InvalidArgumentError("cannot slice an empty event stream");
    const int count = scheme.effective_count();
    if (count < 1) throw InvalidArgumentError("snapshot_count must be >= 1");

    const std::int64_t min_ts = events.front().timestamp;
    const std::int64_t max_ts = events.back().timestamp;
    const std::int64_t span = max_ts - min_ts;

    std::vector<std::int64_t> cuts(count);
    if (scheme.kind == SliceKind::S2 && scheme.interval <= 0) {
        // span divided into `count` equal periods; the last cut is max_ts.
        for (int k = 0; k < count; ++k)
            cuts[k] = min_ts + static_cast<std::int64_t>((static_cast<__int128>(k + 1) * span) / count);
    } else {
        std::int64_t interval = scheme.interval;
        if (interval <= 0) {
            interval = min_positive_gap(events);
            if (interval == 0)
                throw InvalidArgumentError(
                    "all events share one timestamp; pass an explicit interval");
        }
        if (scheme.kind != SliceKind::S2 &&
            span < static_cast<std::int64_t>(count - 1) * interval)
            throw InsufficientSpanError(
                "stream spans " + std::to_string(span) + " time units, need at least " +
                std::to_string(static_cast<std::int64_t>(count - 1) * interval) + " for " +
                std::to_string(count) + " snapshots at interval " + std::to_string(interval));
        for (int k = 0; k < count; ++k)
            cuts[k] = max_ts - static_cast<std::int64_t>(count - 1 - k) * interval;
    }

    SnapshotSequence seq;
    SnapshotBuilder builder;
    std::size_t next_event = 0;
    for (int k = 0; k < count; ++k) {
        while (next_event < events.size() && events[next_event].timestamp <= cuts[k]) {
            const auto& ev = events[next_event];
            builder.add_edge(seq.interner->intern(ev.u), seq.interner->intern(ev.v));
            ++next_event;
        }
        seq.snapshots.push_back(builder.build(k));
    }
    return seq;
}

void write_snapshot_dir(const SnapshotSequence& seq, const std::string& path) {
    std::error_code ec;
    fs::create_directories(path, ec);
    if (ec) throw IoError("cannot create directory '" + path + "': " + ec.message());
    for (std::size_t t = 0; t < seq.snapshots.size(); ++t) {
        const fs::path file = fs::path(path) / ("t_" + std::to_string(t) + ".edges");
        std::ofstream out(file);
        if (!out) throw IoError("cannot open '" + file.string() + "' for writing");
        for (const auto& [u, v] : seq.snapshots[t].edges())
            out << seq.interner->label(u) << ' ' << seq.interner->label(v) << '\n';
        if (!out) throw IoError("write failed for '" + file.string() + "'");
    }
}

SnapshotSequence load_snapshot_dir(const std::string& path) {
    if (!fs::is_directory(path)) throw IoError("'" + path + "' is not a directory");

    std::vector<std::pair<long, fs::path>> files;
    for (const auto& entry : fs::directory_iterator(path)) {
        if (!entry.is_regular_file()) continue;
        const std::string name = entry.path().filename().string();
        if (name.size() < 9 || name.rfind("t_", 0) != 0 || !name.ends_with(".edges")) continue;
        const std::string digits = name.substr(2, name.size() - 8);
        long index = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec != std::errc() || ptr != digits.data() + digits.size()) continue;
        files.emplace_back(index, entry.path());
    }
    if (files.empty()) throw IoError("no t_<index>.edges files under '" + path + "'");
    std::sort(files.begin(), files.end());

    SnapshotSequence seq;
    for (std::size_t t = 0; t < files.size(); ++t) {
        std::ifstream in(files[t].second);
        if (!in) throw IoError("cannot open '" + files[t].second.string() + "'");
        SnapshotBuilder builder;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (is_comment_or_blank(line)) continue;
            auto fields = split_fields(line);
            if (fields.size() != 2)
                throw ParseError(files[t].second.string() + ":" + std::to_string(line_no) +
                                 ": expected 'u v'");
            builder.add_edge(seq.interner->intern(fields[0]), seq.interner->intern(fields[1]));
        }
        seq.snapshots.push_back(builder.build(static_cast<int>(t)));
    }
    return seq;
}

}  // namespace dynembed
