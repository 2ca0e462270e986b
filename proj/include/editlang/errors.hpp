#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace editlang {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Document could not be read as structured text/JSON at all.
struct ParseError : Error {
  using Error::Error;
};

// Document parsed but violates an invariant; `subject` names the offender.
struct SchemaError : Error {
  std::string subject;
  SchemaError(std::string subject_, const std::string& what_)
      : Error(what_), subject(std::move(subject_)) {}
};

struct IoError : Error {
  using Error::Error;
};

struct MalformedAtom : Error {
  using Error::Error;
};

// Facing query where actor and target coincide in the xy plane.
struct DegenerateDirection : Error {
  using Error::Error;
};

struct PreconditionUnsatisfied : Error {
  std::vector<std::string> missing;
  PreconditionUnsatisfied(const std::string& what_, std::vector<std::string> missing_)
      : Error(what_), missing(std::move(missing_)) {}
};

struct ExecutionRejected : Error {
  int step_index = -1;
  ExecutionRejected(int step, const std::string& what_) : Error(what_), step_index(step) {}
};

// Remote policy transport failures. All of these surface to the planner as a
// failed proposal attempt, never as a crash.
struct ProposalError : Error {
  using Error::Error;
};
struct TransportError : ProposalError {
  using ProposalError::ProposalError;
};
struct TimeoutError : TransportError {
  using TransportError::TransportError;
};
struct MalformedResponse : ProposalError {
  using ProposalError::ProposalError;
};
struct NoApplicableAction : ProposalError {
  using ProposalError::ProposalError;
};

}  // namespace editlang
