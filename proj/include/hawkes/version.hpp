#pragma once

namespace hawkes {
inline constexpr const char* version_string = "0.1.0";
inline constexpr int report_schema = 1;
}
