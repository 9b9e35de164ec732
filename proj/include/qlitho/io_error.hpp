#pragma once

#include <stdexcept>

namespace qlitho {

/// File could not be opened, read or written; the message names the path.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace qlitho
