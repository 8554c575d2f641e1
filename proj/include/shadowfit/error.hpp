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
/// Error type shared by every shadowfit module.

#ifndef SHADOWFIT_ERROR_HPP
#define SHADOWFIT_ERROR_HPP

#include <stdexcept>
#include <string>
#include <string_view>

namespace shadowfit {

enum class Errc
{
	invalid_input,
	domain,
	singular_matrix,
	insufficient_data,
	insufficient_samples,
	insufficient_dof,
	degenerate_abscissa,
	undefined_correlation,
	non_invertible_model,
	no_coverage,
	not_found,
	format,
	parse,
	validation,
	schema,
	io
};

constexpr std::string_view to_string(Errc code) noexcept
{
	switch (code)
	{
		case Errc::invalid_input: return "invalid input";
		case Errc::domain: return "domain error";
		case Errc::singular_matrix: return "singular matrix";
		case Errc::insufficient_data: return "insufficient data";
		case Errc::insufficient_samples: return "insufficient samples";
		case Errc::insufficient_dof: return "insufficient degrees of freedom";
		case Errc::degenerate_abscissa: return "degenerate abscissa";
		case Errc::undefined_correlation: return "undefined correlation";
		case Errc::non_invertible_model: return "non-invertible model";
		case Errc::no_coverage: return "no coverage";
		case Errc::not_found: return "not found";
		case Errc::format: return "format error";
		case Errc::parse: return "parse error";
		case Errc::validation: return "validation error";
		case Errc::schema: return "schema error";
		case Errc::io: return "i/o error";
	}
	return "error";
}

/// True for failures of the numerical machinery itself, as opposed to bad
/// or insufficient input data.
constexpr bool is_numerical(Errc code) noexcept
{
	return code == Errc::singular_matrix
	    || code == Errc::degenerate_abscissa
	    || code == Errc::non_invertible_model
	    || code == Errc::undefined_correlation
	    || code == Errc::no_coverage;
}

class Error : public std::runtime_error
{
public:
	Error(Errc code, std::string const& what)
	: std::runtime_error(std::string(to_string(code)) + ": " + what),
	  code_(code)
	{
	}

	Errc code() const noexcept { return code_; }

private:
	Errc code_;
};

} // namespace shadowfit

#endif // SHADOWFIT_ERROR_HPP
