#pragma once

#include <iosfwd>
#include <string>

#include "config.hpp"

namespace dpwlab {

/// Each command writes its report to `out`, warnings to `err`, and returns
/// an exit code. Library errors propagate as dpw::Error.
int cmd_gen(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_monodromy(const RunConfig& config, std::ostream& out, std::ostream& err);
/// suite: gauges | frobenius | isotropy | iwasawa | nonclosing
int cmd_verify(const RunConfig& config, const std::string& suite, std::ostream& out, std::ostream& err);
/// Points CSV (as written by gen) to OBJ.
int cmd_export(const RunConfig& config, std::ostream& out);

}  // namespace dpwlab
