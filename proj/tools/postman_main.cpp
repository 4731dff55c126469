#include "postman/cli.hpp"

int main(int argc, char** argv) { return postman::cli_main(argc, argv); }
