#ifndef CONDBOUND_HARNESS_HPP
#define CONDBOUND_HARNESS_HPP

#include "condbound/harness/family.hpp"
#include "condbound/harness/report.hpp"
#include "condbound/harness/runners.hpp"
#include "condbound/harness/verify.hpp"

#endif  // CONDBOUND_HARNESS_HPP
