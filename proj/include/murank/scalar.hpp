#pragma once

#include "murank/complexf.hpp"
#include "murank/quadext.hpp"
#include "murank/rational.hpp"

#include <concepts>
#include <vector>

namespace murank {

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<QuadExt> {
    static constexpr bool is_exact = true;
    static constexpr const char* name = "exact";
};

template <>
struct scalar_traits<ComplexF> {
    static constexpr bool is_exact = false;
    static constexpr const char* name = "complex";
};

/// The field-like scalar interface the whole library is generic over.
template <class S>
concept Scalar = requires(const S a, const S b, const Rational r) {
    S{};
    { S::zero() } -> std::same_as<S>;
    { S::one() } -> std::same_as<S>;
    { S::from_int(std::int64_t{}) } -> std::same_as<S>;
    { S::from_rational(r) } -> std::same_as<S>;
    { a + b } -> std::same_as<S>;
    { a - b } -> std::same_as<S>;
    { a * b } -> std::same_as<S>;
    { -a } -> std::same_as<S>;
    { a.inverse() } -> std::same_as<S>;
    { a.is_zero() } -> std::same_as<bool>;
    { sqrt_candidates(a) } -> std::same_as<std::vector<S>>;
    scalar_traits<S>::is_exact;
};

template <Scalar S>
[[nodiscard]] bool scalar_eq(const S& a, const S& b) {
    return (a - b).is_zero();
}

template <Scalar S>
[[nodiscard]] S scalar_half() {
    return S::from_int(2).inverse();
}

static_assert(Scalar<QuadExt>);
static_assert(Scalar<ComplexF>);

}  // namespace murank
