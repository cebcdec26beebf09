#pragma once

#include <stdexcept>
#include <string>

namespace passloc {

enum class Errc {
  ZeroArgument,
  ZeroPolynomial,
  MultipleRootUnresolved,
  EnclosureOverlap,
  NotInterlacing,
  NotPositiveAtOne,
  AllZeroMultiplier,
  InvalidArgument,
  MultiplePole,
  PoleOnUnitCircle,
  MassCondition,
  BadHoneycombSpec,
  InvalidSpec,
  Config,
  PMembershipFailure,
  QCertificationFailure,
  DegenerateQuery,
  ReflectingLevelInStrip,
  NoConvergence,
  HorizonExceeded,
  NegativeInput,
  Numeric,
  Io,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace passloc
