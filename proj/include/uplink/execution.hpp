#pragma once

namespace uplink {

/// Serial is the reference path; Parallel distributes independent work items
/// over OpenMP threads and must reproduce the serial result bit for bit.
enum class Execution { Serial, Parallel };

}  // namespace uplink
