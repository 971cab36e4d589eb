#pragma once

#include <vector>

#include "robustgait/types.hpp"

namespace robustgait {

/// The per-kind severity schedule. Values are the published schedules,
/// verbatim; freeze is intentionally non-monotone (40/20/10/5/10 %).
struct SeverityTable {
    CorruptionKind kind;
    // One parameter tuple per severity level 1..5.
    std::vector<std::vector<double>> params;
};

/// Exact schedule entry for (kind, severity). Tuple layout per kind:
///   gaussian_noise    {sigma}
///   shot_noise        {lambda}
///   impulse_noise     {amount}
///   speckle_noise     {scale}
///   defocus_blur      {radius, alias_sigma}
///   zoom_blur         {zoom_max}
///   motion_blur       {radius, sigma}
///   zoom_in           {zoom_max}
///   freeze            {proportion}
///   sampling          {rate}
///   low_light         {strength}
///   fog               {coefficient}
///   rain              {brightness, drop_length}
///   snow              {coefficient}
///   occlusion         {area_fraction}
const std::vector<double>& severity_params(CorruptionKind kind, Severity severity);

const SeverityTable& severity_table(CorruptionKind kind);

} // namespace robustgait
