#pragma once

#include <stdexcept>
#include <string>

namespace paratile {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define PARATILE_DECLARE_ERROR(Name)                                        \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

PARATILE_DECLARE_ERROR(InvalidInput);
PARATILE_DECLARE_ERROR(EmptyInput);
PARATILE_DECLARE_ERROR(UnboundedInput);
PARATILE_DECLARE_ERROR(DimensionLimit);
PARATILE_DECLARE_ERROR(KernelNotIndependent);
PARATILE_DECLARE_ERROR(NotAVertex);
PARATILE_DECLARE_ERROR(ZeroDirection);
PARATILE_DECLARE_ERROR(DirectionNotInSpan);
PARATILE_DECLARE_ERROR(NotSeparable);
PARATILE_DECLARE_ERROR(NotPositiveDefinite);
PARATILE_DECLARE_ERROR(FacetNotCentrallySymmetric);
PARATILE_DECLARE_ERROR(VenkovFailure);
PARATILE_DECLARE_ERROR(UnexpectedStarSize);
PARATILE_DECLARE_ERROR(UnclassifiableCell);
PARATILE_DECLARE_ERROR(NotSubcells);
PARATILE_DECLARE_ERROR(CertificationFailure);
PARATILE_DECLARE_ERROR(NoPositiveSolution);
PARATILE_DECLARE_ERROR(NotPrimitiveVertex);
PARATILE_DECLARE_ERROR(HypothesisViolated);
PARATILE_DECLARE_ERROR(DisconnectedGraph);
PARATILE_DECLARE_ERROR(InconsistentScaling);
PARATILE_DECLARE_ERROR(PointOnSkeletonAmbiguity);
PARATILE_DECLARE_ERROR(SearchFailure);
PARATILE_DECLARE_ERROR(ReproductionFailure);

#undef PARATILE_DECLARE_ERROR

}  // namespace paratile
