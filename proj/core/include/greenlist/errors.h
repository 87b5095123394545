// Copyright 2026 The Greenlist Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef GREENLIST_ERRORS_H_
#define GREENLIST_ERRORS_H_

#include <stdexcept>
#include <string>

namespace greenlist {

// Base class for every error raised by the library. The CLI maps the
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Invalid parameters: gamma outside (0,1), odd key counts, bad temperature...
class ConfigError : public Error {
 public:
  using Error::Error;
};

// A seeding window shorter than the scheme's context width.
class WindowUnderflow : public Error {
 public:
  using Error::Error;
};

// A next-token source returned a malformed logit vector.
class SourceError : public Error {
 public:
  using Error::Error;
};

// Detection was asked to score a sequence with no countable positions.
class EmptyScoreError : public Error {
 public:
  using Error::Error;
};

// Exhaustive enumeration requested on a vocabulary that is too large.
class SizeError : public Error {
 public:
  using Error::Error;
};

// A requested target lies outside the reachable range.
class RangeError : public Error {
 public:
  using Error::Error;
};

// Bad or missing input data (empty corpus, malformed JSONL...).
class DataError : public Error {
 public:
  using Error::Error;
};

// An attack budget that would leave too few tokens to score.
class BudgetError : public Error {
 public:
  using Error::Error;
};

// Text that is not valid UTF-8.
class EncodingError : public Error {
 public:
  using Error::Error;
};

}  // namespace greenlist

#endif  // GREENLIST_ERRORS_H_
