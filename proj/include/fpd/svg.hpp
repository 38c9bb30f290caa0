#pragma once

#include <string>
#include <vector>

#include "fpd/diagram.hpp"

namespace fpd {

// Birth/death scatter with the diagonal; one colour per homology degree.
void write_diagram_svg(const std::vector<PersistenceDiagram>& diagrams, const std::string& path);

// Grid of value-labelled cells; row/column labels optional.
void write_heatmap_svg(const std::vector<std::vector<double>>& grid,
                       const std::vector<std::string>& row_labels,
                       const std::vector<std::string>& col_labels, const std::string& path);

}  // namespace fpd
