#pragma once

#include <stdexcept>

namespace cantrees {

// Thrown on precondition violations across the library (division by an
// interval containing zero, invalid level profile, truncation order too
// small to certify a tail, ...).  Never signalled through return values.
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cantrees
