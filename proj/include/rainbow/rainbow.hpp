#ifndef RAINBOW_RAINBOW_HPP
#define RAINBOW_RAINBOW_HPP

#include <rainbow/bounds.hpp>
#include <rainbow/constructions.hpp>
#include <rainbow/core.hpp>
#include <rainbow/dot.hpp>
#include <rainbow/oracle.hpp>
#include <rainbow/verifier.hpp>

#endif
