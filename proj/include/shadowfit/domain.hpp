// Copyright 2026 The shadowfit Authors
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

/// \file
/// Propagation model types and forward evaluations.
///
/// Calibrated models live in received-signal-strength space (dBm). A path
/// loss in dB differs from RSS only by the transmit power, which the survey
/// data never records, so the exponent is the same in either space.

#ifndef SHADOWFIT_DOMAIN_HPP
#define SHADOWFIT_DOMAIN_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <variant>

#include "shadowfit/error.hpp"
#include "shadowfit/format.hpp"

namespace shadowfit {

namespace detail {

inline void require_finite(double value, char const* name)
{
	if (!std::isfinite(value))
	{
		throw Error(Errc::invalid_input, std::string(name) + " must be finite");
	}
}

inline void require_positive_distance(double d)
{
	if (!(d > 0.0) || !std::isfinite(d))
	{
		throw Error(Errc::domain, "distance must be positive and finite, got " + format_number(d));
	}
}

} // namespace detail

/// Line-of-sight model, received power C_T * P_t / d^2 in linear units.
struct FreeSpaceModel
{
	double c_t;
	double tx_power;

	bool operator==(FreeSpaceModel const&) const = default;
};

/// Ground-reflection model, received power C_t * P_t / d^4 in linear units.
struct TwoRayModel
{
	double c_t2;
	double tx_power;

	bool operator==(TwoRayModel const&) const = default;
};

/// Quartic a d^4 + b d^3 + c d^2 + e d + f for the shadowing standard
/// deviation in dB, valid on [d_min, d_max]. Evaluation clamps to the domain.
struct SigmaPolynomial
{
	double a = 0.0;
	double b = 0.0;
	double c = 0.0;
	double e = 0.0;
	double f = 0.0;
	double d_min = 1.0;
	double d_max = 1.0;

	/// Highest power first: {a, b, c, e, f}.
	std::array<double, 5> coefficients() const { return {a, b, c, e, f}; }

	void validate() const
	{
		for (double v : coefficients())
		{
			detail::require_finite(v, "sigma coefficient");
		}
		if (!(d_min > 0.0) || !std::isfinite(d_min))
		{
			throw Error(Errc::invalid_input, "sigma d_min must be positive");
		}
		if (!(d_max > d_min) || !std::isfinite(d_max))
		{
			throw Error(Errc::invalid_input, "sigma d_max must exceed d_min");
		}
	}

	bool operator==(SigmaPolynomial const&) const = default;
};

/// Distance-independent shadowing standard deviation.
struct ConstantSigma
{
	double value_db = 0.0;

	bool operator==(ConstantSigma const&) const = default;
};

using SigmaModel = std::variant<ConstantSigma, SigmaPolynomial>;

struct SigmaValue
{
	double value;
	bool clamped;
};

/// Log-normal shadowing model in RSS form:
///   RSS(d) = rss_d0 - 10 eta log10(d / d0) + sigma(d) * N(0, 1)
/// The shadowing term is zero-mean.
struct ShadowedPathLossModel
{
	double d0 = 1.0;
	double rss_d0 = 0.0;
	double eta = 2.0;
	SigmaModel sigma = ConstantSigma{};

	void validate() const
	{
		if (!(d0 > 0.0) || !std::isfinite(d0))
		{
			throw Error(Errc::invalid_input, "d0 must be positive and finite");
		}
		detail::require_finite(eta, "eta");
		detail::require_finite(rss_d0, "rss_d0");
		if (auto const* poly = std::get_if<SigmaPolynomial>(&sigma))
		{
			poly->validate();
		}
		else
		{
			double s = std::get<ConstantSigma>(sigma).value_db;
			if (!(s >= 0.0) || !std::isfinite(s))
			{
				throw Error(Errc::invalid_input, "constant sigma must be finite and non-negative");
			}
		}
	}

	bool operator==(ShadowedPathLossModel const&) const = default;
};

struct LinkConstants
{
	/// dBm at 1 % packet error rate for the surveyed 2.4 GHz radios.
	double receiver_sensitivity_dbm = -92.0;

	void validate() const
	{
		if (!(receiver_sensitivity_dbm < 0.0) || !std::isfinite(receiver_sensitivity_dbm))
		{
			throw Error(Errc::invalid_input, "receiver sensitivity must be below 0 dBm");
		}
	}
};

/// PL = Pt - Pr in dB.
inline double path_loss_db(double pt_dbm, double pr_dbm)
{
	detail::require_finite(pt_dbm, "transmit power");
	detail::require_finite(pr_dbm, "received power");
	return pt_dbm - pr_dbm;
}

/// Inverse of path_loss_db for callers that know the transmit power.
inline double rss_from_path_loss(double pt_dbm, double path_loss)
{
	detail::require_finite(pt_dbm, "transmit power");
	detail::require_finite(path_loss, "path loss");
	return pt_dbm - path_loss;
}

inline double free_space_rx(FreeSpaceModel const& model, double d)
{
	if (!(model.c_t > 0.0) || !(model.tx_power > 0.0))
	{
		throw Error(Errc::invalid_input, "free-space constants must be positive");
	}
	detail::require_positive_distance(d);
	return model.c_t * model.tx_power / (d * d);
}

inline double two_ray_rx(TwoRayModel const& model, double d)
{
	if (!(model.c_t2 > 0.0) || !(model.tx_power > 0.0))
	{
		throw Error(Errc::invalid_input, "two-ray constants must be positive");
	}
	detail::require_positive_distance(d);
	double const d2 = d * d;
	return model.c_t2 * model.tx_power / (d2 * d2);
}

inline double predict_mean_rss(ShadowedPathLossModel const& model, double d)
{
	detail::require_positive_distance(d);
	return model.rss_d0 - 10.0 * model.eta * std::log10(d / model.d0);
}

inline SigmaValue sigma_at(SigmaPolynomial const& poly, double d)
{
	detail::require_positive_distance(d);
	double const x = std::clamp(d, poly.d_min, poly.d_max);
	// Horner
	double const value = (((poly.a * x + poly.b) * x + poly.c) * x + poly.e) * x + poly.f;
	return {value, x != d};
}

inline SigmaValue sigma_at(SigmaModel const& sigma, double d)
{
	if (auto const* poly = std::get_if<SigmaPolynomial>(&sigma))
	{
		return sigma_at(*poly, d);
	}
	detail::require_positive_distance(d);
	return {std::get<ConstantSigma>(sigma).value_db, false};
}

inline SigmaValue sigma_at(ShadowedPathLossModel const& model, double d)
{
	return sigma_at(model.sigma, d);
}

/// Zero-mean Gaussian density of the shadowing term psi (dB).
inline double shadow_pdf(double psi, double sigma)
{
	if (!(sigma > 0.0) || !std::isfinite(sigma))
	{
		throw Error(Errc::domain, "sigma must be positive");
	}
	double const u = psi / sigma;
	return std::exp(-0.5 * u * u) / (std::sqrt(2.0 * std::numbers::pi) * sigma);
}

} // namespace shadowfit

#endif // SHADOWFIT_DOMAIN_HPP
