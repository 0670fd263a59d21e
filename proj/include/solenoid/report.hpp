/*
   Copyright 2026 The solenoid authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef SOLENOID_REPORT_HPP
#define SOLENOID_REPORT_HPP

#include <cstddef>
#include <string>
#include <vector>

#include <json.hpp>

namespace solenoid {

/// Result of one verification sweep. Violations are content, not errors:
/// a verifier never throws on a failed identity, it records it.
struct VerifierReport {
    std::string subject;
    std::size_t checked = 0;
    std::vector<std::string> violations;
    nlohmann::json details = nlohmann::json::object();

    bool ok() const { return violations.empty(); }

    void violation(const std::string& what) { violations.push_back(what); }

    nlohmann::json to_json() const {
        nlohmann::json j;
        j["subject"] = subject;
        j["checked"] = checked;
        j["violations"] = violations;
        j["ok"] = ok();
        if (!details.empty()) j["details"] = details;
        return j;
    }
};

}  // namespace solenoid

#endif
