#pragma once

namespace isoform {

/// Entry point of the command-line tool. Exit codes: 0 success, 1 error,
/// 2 negative (or undecided) verdict from check-isothermic.
int run(int argc, char** argv);

}  // namespace isoform
