#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dynembed/graph.hpp"

namespace dynembed {

struct EdgeEvent {
    std::string u;
    std::string v;
    std::int64_t timestamp = 0;
};

enum class SliceKind { S1 = 1, S2 = 2, S3 = 3 };

// S1/S3 cut the stream at the last snapshot_count multiples of `interval`
// ending at the maximum timestamp; S2 divides [min_ts, max_ts] into
// snapshot_count equal periods. interval == 0 means "infer the minimum
// positive gap between consecutive timestamps" for S1/S3 and "use the
// span-based periods" for S2; a positive interval overrides either.
struct SliceScheme {
    SliceKind kind = SliceKind::S1;
    std::int64_t interval = 0;
    int snapshot_count = 0;  // 0: scheme default (21 for S1/S2, 100 for S3)

    int effective_count() const {
        if (snapshot_count > 0) return snapshot_count;
        return kind == SliceKind::S3 ? 100 : 21;
    }
};

// Lines are "u <sep> v <sep> timestamp" with sep = spaces/tabs; '#' and '%'
// start comments; blank lines are skipped. Events come back stably sorted by
// timestamp (ties keep input order).
std::vector<EdgeEvent> parse_edge_stream(std::istream& input);
std::vector<EdgeEvent> parse_edge_stream_file(const std::string& path);

// Cumulative snapshots: snapshot k holds every edge seen at or before cut k.
// Throws InsufficientSpanError when the stream spans fewer than
// snapshot_count intervals (S1/S3).
SnapshotSequence slice(const std::vector<EdgeEvent>& events, const SliceScheme& scheme);

// One file per snapshot named "t_<index>.edges", lines "u v" with external
// labels. Reading orders files by their numeric index and re-interns labels
// in file order.
void write_snapshot_dir(const SnapshotSequence& seq, const std::string& path);
SnapshotSequence load_snapshot_dir(const std::string& path);

}  // namespace dynembed
