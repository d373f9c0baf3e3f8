// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCORR_ERRORS_HPP
#define QCORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qcorr {

/// Mismatched particle numbers or local dimensions between operands.
class DimensionMismatch : public std::invalid_argument {
public:
    explicit DimensionMismatch(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Invalid value construction (bad normalization, non-Hermitian entries,
/// out-of-range parameters, malformed index tuples).
class InvalidValue : public std::invalid_argument {
public:
    explicit InvalidValue(const std::string& what)
        : std::invalid_argument(what) {}
};

/// Projection onto an exchange-symmetry sector annihilated the vector,
/// e.g. antisymmetrizing |a>|a>.
class NullProjection : public std::runtime_error {
public:
    explicit NullProjection(const std::string& what)
        : std::runtime_error(what) {}
};

/// The requested family of classical states is empty, e.g. fermions with
/// fewer levels than particles.
class EmptyClassicalSet : public std::runtime_error {
public:
    explicit EmptyClassicalSet(const std::string& what)
        : std::runtime_error(what) {}
};

/// The relative-strength parameter is undefined for g_max <= 0.
class NonpositiveBound : public std::runtime_error {
public:
    explicit NonpositiveBound(const std::string& what)
        : std::runtime_error(what) {}
};

/// A numerical consistency check failed (imaginary residue, commutator
/// violation, solver breakdown).
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what)
        : std::runtime_error(what) {}
};

}  // namespace qcorr

#endif  // QCORR_ERRORS_HPP
