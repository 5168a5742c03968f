#include "acsq/cli_app.hpp"

int main(int argc, char** argv) { return acsq::run_cli(argc, argv); }
