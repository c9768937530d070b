#ifndef CUSPBASE_ERRORS_HPP
#define CUSPBASE_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cuspbase
{

// Root of every error thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// q-series arithmetic.
class precision_exceeded : public error
{
    using error::error;
};
class off_grid : public error
{
    using error::error;
};
class not_a_unit : public error
{
    using error::error;
};
class zero_within_precision : public error
{
    using error::error;
};

// Atom expansion.
class fractional_valuation : public error
{
    using error::error;
};
class lattice_point : public error
{
    using error::error;
};
class invalid_atom : public error
{
    using error::error;
};

// Dimensions and catalog lookup.
class odd_weight : public error
{
    using error::error;
};
class unsupported_level : public error
{
    using error::error;
};
class weight_mismatch : public error
{
    using error::error;
};
class level_mismatch : public error
{
    using error::error;
};

// Raised by the expression parser; position is a 0-based byte offset into the input.
class syntax_error : public error
{
public:
    syntax_error(const std::string &msg, std::size_t pos) : error(msg), m_pos(pos) {}
    std::size_t position() const noexcept
    {
        return m_pos;
    }

private:
    std::size_t m_pos;
};

// An atom name the grammar does not know, or a catalog reference (E[..], F[..],
// delta(..)) with no catalog entry. Parse-time instances carry a position.
class unknown_atom : public syntax_error
{
public:
    explicit unknown_atom(const std::string &msg, std::size_t pos = static_cast<std::size_t>(-1))
        : syntax_error(msg, pos)
    {
    }
};

// Basis construction.
class insufficient_precision : public error
{
    using error::error;
};

class rank_error : public error
{
public:
    rank_error(const std::string &msg, std::size_t rank, std::size_t expected)
        : error(msg), m_rank(rank), m_expected(expected)
    {
    }
    std::size_t rank() const noexcept
    {
        return m_rank;
    }
    std::size_t expected() const noexcept
    {
        return m_expected;
    }

private:
    std::size_t m_rank;
    std::size_t m_expected;
};

class rank_deficient : public rank_error
{
    using rank_error::rank_error;
};
class rank_excess : public rank_error
{
    using rank_error::rank_error;
};
class incomplete_span : public rank_error
{
    using rank_error::rank_error;
};

class ladder_condition_failed : public error
{
    using error::error;
};

// A structural identity that must hold by construction did not.
class invariant_violation : public error
{
    using error::error;
};

} // namespace cuspbase

#endif
