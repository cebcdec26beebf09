#include "passloc/real.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>

#include "passloc/error.hpp"

namespace passloc {

namespace {

unsigned initial_bits() {
  if (const char* env = std::getenv("PASSLOC_PRECISION_BITS")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 64 && v <= 4096) return static_cast<unsigned>(v);
  }
  return 128;
}

std::atomic<unsigned>& bits_store() {
  static std::atomic<unsigned> bits{initial_bits()};
  return bits;
}

}  // namespace

static thread_local unsigned scoped_bits = 0;

unsigned precision_bits() { return std::max(bits_store().load(), scoped_bits); }

PrecisionScope::PrecisionScope(unsigned bits) : saved_(scoped_bits) {
  scoped_bits = std::max(saved_, std::min(bits, 1u << 14));
  use_working_precision();
}

PrecisionScope::~PrecisionScope() {
  scoped_bits = saved_;
  use_working_precision();
}

void set_precision_bits(unsigned bits) {
  if (bits < 64 || bits > 4096) throw Error(Errc::InvalidArgument, "precision bits must be in [64, 4096]");
  bits_store().store(bits);
}

void use_working_precision() {
  unsigned digits10 = static_cast<unsigned>(std::ceil(precision_bits() * 0.30102999566398120)) + 1;
  if (Real::default_precision() != digits10) Real::default_precision(digits10);
}

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ZeroArgument: return "ZeroArgument";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::MultipleRootUnresolved: return "MultipleRootUnresolved";
    case Errc::EnclosureOverlap: return "EnclosureOverlap";
    case Errc::NotInterlacing: return "NotInterlacing";
    case Errc::NotPositiveAtOne: return "NotPositiveAtOne";
    case Errc::AllZeroMultiplier: return "AllZeroMultiplier";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::MultiplePole: return "MultiplePole";
    case Errc::PoleOnUnitCircle: return "PoleOnUnitCircle";
    case Errc::MassCondition: return "MassCondition";
    case Errc::BadHoneycombSpec: return "BadHoneycombSpec";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::Config: return "ConfigError";
    case Errc::PMembershipFailure: return "PMembershipFailure";
    case Errc::QCertificationFailure: return "QCertificationFailure";
    case Errc::DegenerateQuery: return "DegenerateQuery";
    case Errc::ReflectingLevelInStrip: return "ReflectingLevelInStrip";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::HorizonExceeded: return "HorizonExceeded";
    case Errc::NegativeInput: return "NegativeInput";
    case Errc::Numeric: return "NumericError";
    case Errc::Io: return "IoError";
  }
  return "Unknown";
}

}  // namespace passloc
