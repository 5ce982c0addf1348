#pragma once

#include <string>

#include "ccv/service/service.hpp"

namespace httplib {
class Server;
}

namespace ccv::service {

/// Registers the JSON API on `server`; serves `ui_dir` at / when it exists.
void install_routes(httplib::Server& server, CcvService& service, const std::string& ui_dir = {});

}  // namespace ccv::service
