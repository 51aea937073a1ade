#include "tollflow/cli.hpp"

int main(int argc, char** argv) { return tollflow::cli::run(argc, argv); }
