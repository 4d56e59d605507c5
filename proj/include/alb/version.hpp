#ifndef ALB_VERSION_HPP
#define ALB_VERSION_HPP

namespace alb {
inline constexpr const char* kVersion = "0.1.0";
}

#endif  // ALB_VERSION_HPP
