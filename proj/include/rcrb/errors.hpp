/*
Copyright 2026 The rcrb Authors
Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
you may obtain a copy of the License at

http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#ifndef RCRB_ERRORS_HPP
#define RCRB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rcrb {

enum class Errc {
    invalid_config,      // rejected mode/model/search/total-bits combination
    out_of_range,        // index or code value outside its valid interval
    corrupt_stream,      // payload inconsistent with the model state
    truncated_stream,    // input exhausted mid-decode
    bad_magic,           // stream does not start with the expected magic
    bad_version,         // unsupported stream version
    infeasible_header,   // header fields are internally inconsistent
    data_error,          // input symbols violate their declared alphabet
    infeasible_scaling,  // more nonzero symbols than the scaled total allows
    unencodable_symbol,  // symbol has zero width under the current model
    capacity_exceeded,   // decode-table write past its allocation
    invariant_violation, // internal state contract broke
    undefined_metric,    // metric has no value for the given inputs
    io_error,            // file could not be read or written
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(message)
        , code_(code)
    {
    }

    Errc code() const { return code_; }

private:
    Errc code_;
};

} // namespace rcrb

#endif
