#pragma once

// Catalog files compiled into the library (file name, contents).

#include <string>
#include <utility>
#include <vector>

namespace thg {

const std::vector<std::pair<std::string, std::string>>& builtin_catalog_documents();

}  // namespace thg
