#pragma once

#include <string>

#include "hypercover/cover.hpp"
#include "hypercover/network.hpp"

namespace hypercover {

/// Serialization uses a fixed field order and 17-significant-digit reals
/// so export -> import -> export is byte-identical.

std::string export_cover(const Cover& cover);
Cover import_cover(const std::string& json_text);

std::string export_network(const CompiledNetwork& net);
CompiledNetwork import_network(const std::string& json_text);

/// Same layer schema as CompiledNetwork, for the baseline model.
std::string export_layers(const std::vector<AffineLayer>& layers, int n_inputs,
                          int n_classes, double epsilon);

std::string format_real(double v);

void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace hypercover
