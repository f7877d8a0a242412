#pragma once

#include <iosfwd>

namespace t2i {

/// Subcommands:
///   profile FILE
///   ask FILE "QUESTION" [--chart TYPE] [--offline] [--out DIR]
///   eval PAIRS.jsonl [--threshold 0.5]
///   serve [--port N] [--config PATH]
/// Exit 0 on success, 1 on a pipeline or input error (the JSON error payload
/// is still printed), 2 on a usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace t2i
