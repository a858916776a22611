#include "gravprobe/errors.hpp"

namespace gravprobe {

void require(bool cond, const std::string& what) {
  if (!cond) throw InvalidArgument(what);
}

}  // namespace gravprobe
