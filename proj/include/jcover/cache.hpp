#pragma once

#include <gmpxx.h>

#include <memory>
#include <optional>
#include <string>

#include "jcover/cm.hpp"
#include "jcover/modpoly.hpp"

namespace jcover::cache {

// $JCOVER_CACHE, else $XDG_CACHE_HOME/jcover, else ~/.cache/jcover.
// Created on demand.
std::string directory();

// Write-then-rename; concurrent invocations never observe torn files.
void write_atomic(const std::string& path, const std::string& content);

std::optional<std::string> read_file(const std::string& path);

// Level-N modular polynomial: process memo, then the phi_N.txt disk cache
// (validated before trust), then interpolation at the default precision.
std::shared_ptr<const modpoly::BivariatePolynomial> phi(unsigned long level);

// Class polynomial of discriminant D via the hclass_D.txt cache.
std::shared_ptr<const cm::ClassPolynomial> hclass(const mpz_class& disc);

} // namespace jcover::cache
