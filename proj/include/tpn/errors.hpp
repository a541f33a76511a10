//
// Project     : tpn
// Module      : errors
// Description : exception types thrown by the library
//

#ifndef TPN_ERRORS_HPP
#define TPN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tpn {

// Base class for everything this library throws.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class dimension_error : public error {
public:
    explicit dimension_error(const std::string& what) : error(what) {}
};

class invalid_spec_error : public error {
public:
    explicit invalid_spec_error(const std::string& what) : error(what) {}
};

class zero_matrix_error : public error {
public:
    explicit zero_matrix_error(const std::string& what) : error(what) {}
};

class not_hermitian_error : public error {
public:
    explicit not_hermitian_error(const std::string& what) : error(what) {}
};

class not_psd_error : public error {
public:
    explicit not_psd_error(const std::string& what) : error(what) {}
};

class not_orthogonal_error : public error {
public:
    explicit not_orthogonal_error(const std::string& what) : error(what) {}
};

// Jacobi iteration exhausted its sweep budget without meeting the
// convergence criterion.
class convergence_error : public error {
public:
    explicit convergence_error(const std::string& what) : error(what) {}
};

// An operation's stated precondition does not hold for the given input.
class precondition_error : public error {
public:
    explicit precondition_error(const std::string& what) : error(what) {}
};

class io_error : public error {
public:
    explicit io_error(const std::string& what) : error(what) {}
};

// A numerically checked lemma consequence failed to hold.  This signals a
// bug in the library or a genuine counterexample, never a user error.
class lemma_violation_error : public error {
public:
    explicit lemma_violation_error(const std::string& what) : error(what) {}
};

} // namespace tpn

#endif // TPN_ERRORS_HPP
