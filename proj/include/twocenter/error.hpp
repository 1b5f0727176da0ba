#pragma once

#include <stdexcept>
#include <string>

namespace twocenter {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define TWOCENTER_ERROR(Name)            \
    class Name : public Error {          \
    public:                              \
        using Error::Error;              \
    }

// sturmian
TWOCENTER_ERROR(LatticeHit);
TWOCENTER_ERROR(PhaseHit);
// elliptic
TWOCENTER_ERROR(DomainError);
// model
TWOCENTER_ERROR(CollisionError);
TWOCENTER_ERROR(BranchAmbiguity);
// periods
TWOCENTER_ERROR(RegionError);
TWOCENTER_ERROR(DivergenceError);
TWOCENTER_ERROR(RegionEmpty);
TWOCENTER_ERROR(OutOfRange);
TWOCENTER_ERROR(NoConvergence);
// orbits
TWOCENTER_ERROR(CollisionApproach);
TWOCENTER_ERROR(InadmissibleStart);
TWOCENTER_ERROR(ClosureFailure);

#undef TWOCENTER_ERROR

}  // namespace twocenter
