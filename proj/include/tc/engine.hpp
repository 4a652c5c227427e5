// SPDX-License-Identifier: Apache-2.0
//
// Kinetic particle process: wave-front vertices move with primitive
// velocities, collide when a front edge collapses, and trace the caustic.
#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "tc/caustic.hpp"
#include "tc/domain.hpp"

namespace tc {

/// Raised when the process reaches a state the local-model classification
/// rules out (indicates a bug or invalid input).
class EngineError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Num>
struct Particle {
  int id = 0;
  Point2<Num> birth_pos;
  Num birth_time{};
  LatticeVector direction;
  std::int64_t mass = 1;
  Monomial<Num> left;
  Monomial<Num> right;
  int birth_vertex = 0;

  LatticeVector momentum() const { return mass * direction; }
  Point2<Num> position(const Num& t) const {
    const Num dt = t - birth_time;
    return {Num(birth_pos.x + dt * Num(static_cast<long>(direction.x))),
            Num(birth_pos.y + dt * Num(static_cast<long>(direction.y)))};
  }
};

/// Front state just after t = 0: the active monomials in CCW order and, for
/// each adjacent pair, the corner the pair emanates from.
template <class Num>
struct EngineInput {
  std::vector<Monomial<Num>> monomials;
  std::vector<int> corner_of_pair;  ///< pair i = (monomials[i], monomials[i+1])
  std::vector<Point2<Num>> corners;
};

enum class EventOutcome { Particle, Annihilation, FinalSegment };

template <class Num>
struct EventRecord {
  Num time{};
  Point2<Num> point;
  std::vector<int> participants;
  std::vector<LatticeVector> in_directions;
  std::vector<std::int64_t> in_masses;
  EventOutcome outcome = EventOutcome::Particle;
  LatticeVector out_direction;
  std::int64_t out_mass = 0;
  int vertex = 0;
};

template <class Num>
struct EngineResult {
  CausticGraph<Num> caustic;
  Num final_time{};
  std::vector<EventRecord<Num>> events;
  std::vector<Particle<Num>> particles;  ///< every particle ever created, by id
  std::vector<Num> death_time;           ///< indexed by particle id

  /// Distinct wave-front vertex positions at time t in (0, final_time).
  std::vector<Point2<Num>> front_vertices_at(const Num& t) const;
};

using ExactResult = EngineResult<Rational>;

/// Generic particle between two consecutive active monomials.
template <class Num>
Particle<Num> make_particle(int id, const Monomial<Num>& left, const Monomial<Num>& right, const Point2<Num>& at,
                            const Num& time, int vertex);

/// Absolute time at which the front edge `shared` between two adjacent
/// particles shrinks to a point; nullopt if its length never decreases.
template <class Num>
std::optional<Num> edge_collapse_time(const Particle<Num>& left, const Particle<Num>& right,
                                      const Monomial<Num>& shared);

template <class Num>
EngineResult<Num> run_engine(const EngineInput<Num>& input);

/// Corner fan: `edges` are support monomials in CCW order; `extras[k]` are
/// the monomials inserted at corner k, between edges[k] and edges[k+1].
template <class Num>
EngineInput<Num> make_engine_input(const std::vector<Monomial<Num>>& edges,
                                   const std::vector<std::vector<Monomial<Num>>>& extras);

EngineInput<Rational> engine_input(const RationalPolygon& poly);

/// Particles sent from the corners by the cone rule, in boundary order.
std::vector<Particle<Rational>> seed_particles(const RationalPolygon& poly);

ExactResult run(const RationalPolygon& poly);

extern template struct EngineResult<Rational>;
extern template struct EngineResult<double>;
extern template EngineResult<Rational> run_engine(const EngineInput<Rational>&);
extern template EngineResult<double> run_engine(const EngineInput<double>&);
extern template std::optional<Rational> edge_collapse_time(const Particle<Rational>&, const Particle<Rational>&,
                                                           const Monomial<Rational>&);
extern template std::optional<double> edge_collapse_time(const Particle<double>&, const Particle<double>&,
                                                         const Monomial<double>&);
extern template EngineInput<Rational> make_engine_input(const std::vector<Monomial<Rational>>&,
                                                        const std::vector<std::vector<Monomial<Rational>>>&);
extern template EngineInput<double> make_engine_input(const std::vector<Monomial<double>>&,
                                                      const std::vector<std::vector<Monomial<double>>>&);

}  // namespace tc
