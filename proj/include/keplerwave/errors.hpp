#pragma once

#include <stdexcept>
#include <string>

namespace keplerwave {

/// Nonlinear solver failed to converge; message carries the residual report.
class solver_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A numerical result could not be produced at the required accuracy.
class accuracy_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Spectral window grew past its hard cap before meeting the tail tolerance.
class truncation_error : public accuracy_error {
public:
    using accuracy_error::accuracy_error;
};

class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace keplerwave
