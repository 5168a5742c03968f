#pragma once

namespace acsq {

inline constexpr const char* version = "1.0.0";

}
