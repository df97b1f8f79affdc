#pragma once

#include <stdexcept>
#include <string>

namespace voronome {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidInputError : Error {
    using Error::Error;
};

// series expansion requested at a pole; carries the pole order
struct PoleAtCenterError : Error {
    long pole_order;
    PoleAtCenterError(std::string msg, long order)
        : Error(std::move(msg)), pole_order(order) {}
};

struct UndefinedOrderError : Error {
    using Error::Error;
};

struct UnsupportedScenarioError : Error {
    using Error::Error;
};

struct UnsupportedChartError : Error {
    using Error::Error;
};

struct InvalidLatticeError : Error {
    using Error::Error;
};

struct NearPoleError : Error {
    using Error::Error;
};

// iteration/solver gave up; names the step reached
struct ResourceError : Error {
    long step_reached;
    ResourceError(std::string msg, long step) : Error(std::move(msg)), step_reached(step) {}
};

struct CertificationError : Error {
    using Error::Error;
};

}  // namespace voronome
