#pragma once

namespace locpovm {

// `locpovm <localize|current|discrepancy|covariance|scan> --config <path>
//  [--out <path>]`.  Returns the process exit code: 0 success, 2 config
// error, 3 computation error.
int cli_main(int argc, const char* const* argv);

}  // namespace locpovm
