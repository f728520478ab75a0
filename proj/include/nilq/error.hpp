#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nilq {

enum class ErrorKind {
	InvalidArgument,
	InvalidHomomorphism,
	UnsupportedEnumeration,
	Overflow,
	InvalidCocycle,
	CommutatorMismatch,
	NotAGroup,
	NotClassTwo,
	NotAnAction,
	NotAQMap,
	NotUniquely2Divisible,
	InvalidBracket,
	Unsupported,
	Parse,
	InvariantViolation,
};

inline std::string_view to_string(ErrorKind k)
{
	switch (k)
	{
	case ErrorKind::InvalidArgument: return "invalid-argument";
	case ErrorKind::InvalidHomomorphism: return "invalid-homomorphism";
	case ErrorKind::UnsupportedEnumeration: return "unsupported-enumeration";
	case ErrorKind::Overflow: return "overflow";
	case ErrorKind::InvalidCocycle: return "invalid-cocycle";
	case ErrorKind::CommutatorMismatch: return "commutator-mismatch";
	case ErrorKind::NotAGroup: return "not-a-group";
	case ErrorKind::NotClassTwo: return "not-class-two";
	case ErrorKind::NotAnAction: return "not-an-action";
	case ErrorKind::NotAQMap: return "not-a-qmap";
	case ErrorKind::NotUniquely2Divisible: return "not-uniquely-2-divisible";
	case ErrorKind::InvalidBracket: return "invalid-bracket";
	case ErrorKind::Unsupported: return "unsupported";
	case ErrorKind::Parse: return "parse-error";
	case ErrorKind::InvariantViolation: return "invariant-violation";
	}
	return "unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI exit-status mapping) can dispatch on it.
class Error : public std::runtime_error
{
  public:
	Error(ErrorKind kind, std::string const &what)
	    : std::runtime_error(std::string(to_string(kind)) + ": " + what),
	      kind_(kind)
	{}

	ErrorKind kind() const noexcept { return kind_; }

  private:
	ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, std::string const &what)
{
	throw Error(kind, what);
}

} // namespace nilq
