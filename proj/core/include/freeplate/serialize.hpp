#pragma once

#include <string>
#include <vector>

namespace freeplate {

/// Scientific notation with 12 significant digits ("%.11e"). All floating
/// point output in JSON and CSV artifacts goes through this so that repeated
/// runs produce byte-identical files.
std::string format_sci(double v);

/// One CSV line from already-formatted cells, comma separated, '\n'
/// terminated.
std::string csv_line(const std::vector<std::string>& cells);

}  // namespace freeplate
