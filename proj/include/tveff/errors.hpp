#ifndef TVEFF_ERRORS_HPP
#define TVEFF_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace tveff {

/// Base error. Every failure carries a stable machine-readable code
/// (used verbatim in CLI error JSON) plus a human-readable message.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define TVEFF_DEFINE_ERROR(NAME)                                       \
    class NAME : public Error {                                        \
    public:                                                            \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
                                                                       \
    protected:                                                         \
        NAME(std::string code, const std::string& what)                \
            : Error(std::move(code), what) {}                          \
    }

// series / imputation
TVEFF_DEFINE_ERROR(GapTooLong);
TVEFF_DEFINE_ERROR(InsufficientData);
TVEFF_DEFINE_ERROR(HasGaps);
TVEFF_DEFINE_ERROR(NoOverlap);
TVEFF_DEFINE_ERROR(GapAtBoundary);

// unit root
TVEFF_DEFINE_ERROR(TooShort);
TVEFF_DEFINE_ERROR(NonFinite);

// VAR / TV-VAR
TVEFF_DEFINE_ERROR(RankDeficient);
TVEFF_DEFINE_ERROR(SingularScoreCovariance);
TVEFF_DEFINE_ERROR(Unstable);
TVEFF_DEFINE_ERROR(NonPositiveWeight);
TVEFF_DEFINE_ERROR(BandFailure);
TVEFF_DEFINE_ERROR(UnstableSpec);

// event study
TVEFF_DEFINE_ERROR(WindowOutOfRange);
TVEFF_DEFINE_ERROR(IndexMismatch);

// ingestion / CLI
TVEFF_DEFINE_ERROR(NonMonotonePeriods);
TVEFF_DEFINE_ERROR(ParseError);
TVEFF_DEFINE_ERROR(InvalidConfig);

#undef TVEFF_DEFINE_ERROR

/// Zero-variance input column; reported distinctly but catchable as
/// rank deficiency.
class DegenerateInput : public RankDeficient {
public:
    explicit DegenerateInput(const std::string& what)
        : RankDeficient("DegenerateInput", what) {}
};

/// One or more periods violate the companion stability margin. Carries the
/// 0-based offending period indexes within the fitted coefficient path.
class UnstablePeriod : public Error {
public:
    UnstablePeriod(const std::string& what, std::vector<int> periods)
        : Error("UnstablePeriod", what), periods_(std::move(periods)) {}
    const std::vector<int>& periods() const noexcept { return periods_; }

private:
    std::vector<int> periods_;
};

}  // namespace tveff

#endif  // TVEFF_ERRORS_HPP
