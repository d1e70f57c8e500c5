#pragma once

#include <string>

#include <json.hpp>

#include "roadstate/net/shared_head.hpp"
#include "roadstate/net/veq_net.hpp"

namespace roadstate::net {

/// Binary checkpoint container (little-endian): magic "RSNN", u32 format
/// version, u32 layer count, per layer {u32 rows, u32 cols, f64 weights
/// row-major, f64 biases}, u32 head count, per head {u32 length, f64 data}.
/// A JSON sidecar at <path>.json records widths, embedding and any caller
/// metadata (scales, the equilibrium-speed source, config echo).

void save_shared_head(const SharedHeadNet& net, const std::string& path,
                      const nlohmann::json& sidecar_extra = {});
SharedHeadNet load_shared_head(const std::string& path);

void save_veq(const VeqNet& net, const std::string& path,
              const nlohmann::json& sidecar_extra = {});
VeqNet load_veq(const std::string& path);

/// Parsed sidecar JSON ({} when the sidecar file is missing).
nlohmann::json load_sidecar(const std::string& checkpoint_path);

}  // namespace roadstate::net
