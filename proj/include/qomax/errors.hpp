#pragma once

#include <stdexcept>
#include <string>

namespace qomax {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// maxima store
struct OutOfOrderIndex : Error {
    using Error::Error;
};
struct EmptyRecord : Error {
    using Error::Error;
};
struct EmptySuffix : Error {
    using Error::Error;
};

// estimator
struct EmptyInput : Error {
    using Error::Error;
};
struct InvalidQuantile : Error {
    using Error::Error;
};
struct EmptyHistory : Error {
    using Error::Error;
};
struct SubsampleTooLarge : Error {
    using Error::Error;
};

// distributions
struct UnsupportedTail : Error {
    using Error::Error;
};

// policies / harness
struct HorizonTooSmall : Error {
    using Error::Error;
};
struct UnknownPreset : Error {
    using Error::Error;
};
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qomax
