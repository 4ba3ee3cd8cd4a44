/// @file preconditioner.hpp
/// @brief Preconditioner interface used by the Krylov solvers.
#pragma once

#include "recycg/types.hpp"

namespace recycg {

/// Abstract SPD preconditioner: z = M^-1 r.
class Preconditioner {
public:
    virtual ~Preconditioner() = default;
    virtual void apply(const Vector& r, Vector& z) const = 0;

    Vector apply(const Vector& r) const {
        Vector z;
        apply(r, z);
        return z;
    }
};

/// z = r.
class IdentityPreconditioner : public Preconditioner {
public:
    void apply(const Vector& r, Vector& z) const override { z = r; }
};

}  // namespace recycg
