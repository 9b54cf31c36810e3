#pragma once

#include <stdexcept>
#include <string>

namespace sqslab {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Table/grid ingestion
struct OutOfRange : Error {
  using Error::Error;
};
struct MalformedTable : Error {
  using Error::Error;
};

// Dielectric response
struct BranchPointHit : Error {
  using Error::Error;
};

// Slab transfer
struct LasingThreshold : Error {
  using Error::Error;
};
struct NonConvergent : Error {
  using Error::Error;
};

// Emission
struct CrossoverSingularity : Error {
  using Error::Error;
};
struct TransparentMedium : Error {
  using Error::Error;
};

// Cross-module plumbing
struct InconsistentGrids : Error {
  using Error::Error;
};
struct ZeroTransmission : Error {
  using Error::Error;
};

// Configuration and I/O
struct ParseError : Error {
  using Error::Error;
};
struct ValidationError : Error {
  using Error::Error;
};
struct IoError : Error {
  using Error::Error;
};

}  // namespace sqslab
