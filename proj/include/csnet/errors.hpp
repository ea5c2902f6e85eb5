#pragma once

#include <stdexcept>
#include <string>

namespace csnet {

// Base of every error the library throws. The CLI maps the subclasses onto
// its exit codes (configuration 2, I/O 3, numerical 4).
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Tensor shapes that do not fit together.
class DimensionError : public Error {
public:
  using Error::Error;
};

// Spatial extents that do not tile (stride, block size, window size).
class GeometryError : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

// Malformed model, matrix, image or report file.
class FormatError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

// Ill-conditioned solve or non-finite values.
class NumericalError : public Error {
public:
  using Error::Error;
};

}  // namespace csnet
