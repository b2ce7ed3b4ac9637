#include "mcflab/rational.hpp"

#include <cctype>

#include "mcflab/error.hpp"

namespace mcflab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParamViolation: return "ParamViolation";
    case ErrorCode::CapacityViolation: return "CapacityViolation";
    case ErrorCode::EmptyCycle: return "EmptyCycle";
    case ErrorCode::ZeroResidualCapacity: return "ZeroResidualCapacity";
    case ErrorCode::Infeasible: return "Infeasible";
    case ErrorCode::IterationCapExceeded: return "IterationCapExceeded";
    case ErrorCode::UnboundedCycle: return "UnboundedCycle";
    case ErrorCode::InfeasibleStructure: return "InfeasibleStructure";
    case ErrorCode::NotConnected: return "NotConnected";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string to_string(const Rational& q) { return q.get_str(10); }

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  if (slash == std::string_view::npos) {
    if (!all_digits(body)) return std::nullopt;
  } else {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) return std::nullopt;
    if (den.find_first_not_of('0') == std::string_view::npos) return std::nullopt;
  }
  Rational q;
  if (q.set_str(std::string(text), 10) != 0) return std::nullopt;
  q.canonicalize();
  return q;
}

const Rational& Capacity::value() const {
  if (unbounded_) throw Error(ErrorCode::InvalidArgument, "value() of an unbounded capacity");
  return value_;
}

Capacity Capacity::minus(const Rational& used) const {
  if (unbounded_) return *this;
  return Capacity(Rational(value_ - used));
}

std::string to_string(const Capacity& c) {
  return c.is_unbounded() ? std::string("inf") : to_string(c.value());
}

}  // namespace mcflab
